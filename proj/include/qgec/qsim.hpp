#pragma once

#include "error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace qgec
{

using amplitude = std::complex<double>;

/// 26 qubits of complex<double> amplitudes is 1 GiB.
inline constexpr unsigned default_max_qubits = 26;

/*! \brief Dense statevector over `num_qubits` qubits.
 *
 * Qubit 0 is the most significant bit of the basis index, so the basis index
 * of an input register equals the numeric value of the input assignment.
 */
class quantum_state
{
public:
  explicit quantum_state( unsigned num_qubits, unsigned max_qubits = default_max_qubits ) : num_qubits_( num_qubits )
  {
    if ( num_qubits < 1 )
      throw limit_error( "a quantum state needs at least one qubit" );
    if ( num_qubits > max_qubits )
    {
      auto const mib = ( std::uint64_t{ 1 } << num_qubits ) * sizeof( amplitude ) >> 20;
      throw limit_error( std::to_string( num_qubits ) + " qubits require " + std::to_string( mib ) + " MiB of amplitudes, limit is " +
                         std::to_string( max_qubits ) + " qubits" );
    }
    amplitudes_.assign( std::size_t{ 1 } << num_qubits, amplitude{ 0.0, 0.0 } );
    amplitudes_[0] = 1.0;
  }

  unsigned num_qubits() const { return num_qubits_; }
  std::size_t size() const { return amplitudes_.size(); }

  std::span<amplitude> amplitudes() { return amplitudes_; }
  std::span<amplitude const> amplitudes() const { return amplitudes_; }

  amplitude& operator[]( std::size_t i ) { return amplitudes_[i]; }
  amplitude const& operator[]( std::size_t i ) const { return amplitudes_[i]; }

  /// Bit mask of qubit `q` within a basis index.
  std::size_t mask( unsigned q ) const { return std::size_t{ 1 } << ( num_qubits_ - 1u - q ); }

  double norm_squared() const
  {
    double s = 0.0;
    for ( auto const& a : amplitudes_ )
      s += std::norm( a );
    return s;
  }

private:
  unsigned num_qubits_;
  std::vector<amplitude> amplitudes_;
};

inline quantum_state new_state( unsigned num_qubits, unsigned max_qubits = default_max_qubits )
{
  return quantum_state( num_qubits, max_qubits );
}

enum class op_kind
{
  h,
  x,
  z,
  cx,
  mcx,
  mcz
};

inline std::string_view to_string( op_kind kind )
{
  switch ( kind )
  {
  case op_kind::h: return "H";
  case op_kind::x: return "X";
  case op_kind::z: return "Z";
  case op_kind::cx: return "CX";
  case op_kind::mcx: return "MCX";
  case op_kind::mcz: return "MCZ";
  }
  return "?";
}

struct gate_op
{
  op_kind kind;
  unsigned target;
  std::vector<unsigned> controls;

  static gate_op h( unsigned t ) { return { op_kind::h, t, {} }; }
  static gate_op x( unsigned t ) { return { op_kind::x, t, {} }; }
  static gate_op z( unsigned t ) { return { op_kind::z, t, {} }; }
  static gate_op cx( unsigned c, unsigned t ) { return { op_kind::cx, t, { c } }; }
  static gate_op mcx( std::vector<unsigned> cs, unsigned t ) { return { op_kind::mcx, t, std::move( cs ) }; }
  static gate_op mcz( std::vector<unsigned> cs, unsigned t ) { return { op_kind::mcz, t, std::move( cs ) }; }

  bool operator==( gate_op const& ) const = default;

  std::string to_string() const
  {
    std::string s( qgec::to_string( kind ) );
    for ( auto c : controls )
      s += " c" + std::to_string( c );
    s += " t" + std::to_string( target );
    return s;
  }
};

inline void validate( gate_op const& op, unsigned num_qubits )
{
  auto fail = [&]( std::string const& why ) { throw error( "invalid gate " + op.to_string() + ": " + why ); };
  if ( op.target >= num_qubits )
    fail( "target index out of range for " + std::to_string( num_qubits ) + " qubits" );
  switch ( op.kind )
  {
  case op_kind::h:
  case op_kind::x:
  case op_kind::z:
    if ( !op.controls.empty() )
      fail( "single-qubit gate takes no controls" );
    break;
  case op_kind::cx:
    if ( op.controls.size() != 1 )
      fail( "CX takes exactly one control" );
    break;
  case op_kind::mcx:
  case op_kind::mcz:
    if ( op.controls.empty() )
      fail( "needs at least one control" );
    break;
  }
  for ( std::size_t i = 0; i < op.controls.size(); ++i )
  {
    auto c = op.controls[i];
    if ( c >= num_qubits )
      fail( "control index out of range for " + std::to_string( num_qubits ) + " qubits" );
    if ( c == op.target )
      fail( "control equals target" );
    if ( std::find( op.controls.begin(), op.controls.begin() + i, c ) != op.controls.begin() + i )
      fail( "duplicate control" );
  }
}

/// Applies `op` in place. Throws on invalid indices.
inline void apply_gate( quantum_state& state, gate_op const& op )
{
  validate( op, state.num_qubits() );
  auto amps = state.amplitudes();
  auto const n = amps.size();
  auto const t = state.mask( op.target );
  std::size_t cm = 0;
  for ( auto c : op.controls )
    cm |= state.mask( c );

  switch ( op.kind )
  {
  case op_kind::h:
  {
    double const r = 1.0 / std::sqrt( 2.0 );
    for ( std::size_t i = 0; i < n; ++i )
    {
      if ( i & t )
        continue;
      auto const a = amps[i];
      auto const b = amps[i | t];
      amps[i] = r * ( a + b );
      amps[i | t] = r * ( a - b );
    }
    break;
  }
  case op_kind::x:
  case op_kind::cx:
  case op_kind::mcx:
    for ( std::size_t i = 0; i < n; ++i )
    {
      if ( ( i & t ) == 0 && ( i & cm ) == cm )
        std::swap( amps[i], amps[i | t] );
    }
    break;
  case op_kind::z:
  case op_kind::mcz:
  {
    auto const all = cm | t;
    for ( std::size_t i = 0; i < n; ++i )
    {
      if ( ( i & all ) == all )
        amps[i] = -amps[i];
    }
    break;
  }
  }
}

inline std::vector<double> probabilities( quantum_state const& state )
{
  std::vector<double> p;
  p.reserve( state.size() );
  for ( auto const& a : state.amplitudes() )
    p.push_back( std::norm( a ) );
  return p;
}

/// Shot counts per basis index; only indices with a positive count are stored.
struct measurement_histogram
{
  std::uint64_t shots = 0;
  std::map<std::uint64_t, std::uint64_t> counts;

  /// Number of distinct basis states that were observed.
  std::size_t measured_count() const { return counts.size(); }

  std::uint64_t count( std::uint64_t index ) const
  {
    auto it = counts.find( index );
    return it == counts.end() ? 0 : it->second;
  }

  bool operator==( measurement_histogram const& ) const = default;
};

/// SplitMix64 finalizer.
inline std::uint64_t mix64( std::uint64_t z )
{
  z = ( z ^ ( z >> 30 ) ) * 0xbf58476d1ce4e5b9ULL;
  z = ( z ^ ( z >> 27 ) ) * 0x94d049bb133111ebULL;
  return z ^ ( z >> 31 );
}

inline constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;

/*! \brief Derives an independent stream seed for sub-task `index` of `master`.
 *
 * Used wherever work is split into tasks (attempts of a check, records of a
 * suite) so results do not depend on execution order.
 */
inline std::uint64_t derive_seed( std::uint64_t master, std::uint64_t index )
{
  return mix64( master + golden_gamma * ( index + 1 ) ) ^ mix64( index ^ 0x5851f42d4c957f2dULL );
}

/// Counter-based generator: draw k of a stream is a pure function of (seed, k).
class counter_rng
{
public:
  explicit counter_rng( std::uint64_t seed ) : seed_( seed ) {}

  std::uint64_t operator()() { return mix64( seed_ + golden_gamma * ++counter_ ); }

  /// Uniform double in [0, 1) with 53 bits of precision.
  double uniform() { return static_cast<double>( ( *this )() >> 11 ) * 0x1.0p-53; }

  /// Uniform integer in [0, bound); bound > 0.
  std::uint64_t below( std::uint64_t bound )
  {
    // rejection keeps the distribution exact
    auto const limit = ~std::uint64_t{ 0 } - ( ~std::uint64_t{ 0 } % bound );
    std::uint64_t v;
    do
      v = ( *this )();
    while ( v >= limit );
    return v % bound;
  }

private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// `shots` inverse-CDF draws from a (not necessarily normalized) distribution.
inline measurement_histogram sample_distribution( std::span<double const> probs, std::uint64_t shots, std::uint64_t seed )
{
  if ( shots < 1 )
    throw config_error( "sampling needs at least one shot" );
  std::vector<double> cdf( probs.size() );
  double acc = 0.0;
  for ( std::size_t i = 0; i < probs.size(); ++i )
  {
    acc += probs[i];
    cdf[i] = acc;
  }
  if ( !( acc > 0.0 ) )
    throw error( "cannot sample from a distribution with zero total mass" );

  measurement_histogram h;
  h.shots = shots;
  counter_rng rng( seed );
  for ( std::uint64_t s = 0; s < shots; ++s )
  {
    auto const u = rng.uniform() * acc;
    auto it = std::upper_bound( cdf.begin(), cdf.end(), u );
    auto idx = static_cast<std::size_t>( std::distance( cdf.begin(), it ) );
    if ( idx >= cdf.size() )
    {
      // u rounded up to the total mass: take the last entry with positive mass
      idx = cdf.size() - 1;
      while ( idx > 0 && probs[idx] <= 0.0 )
        --idx;
    }
    ++h.counts[idx];
  }
  return h;
}

inline measurement_histogram sample( quantum_state const& state, std::uint64_t shots, std::uint64_t seed )
{
  auto const p = probabilities( state );
  return sample_distribution( p, shots, seed );
}

} // namespace qgec
