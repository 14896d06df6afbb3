#pragma once

#include "oracle.hpp"
#include "qsim.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

namespace qgec
{

/// Uniform superposition over all `num_qubits` qubits.
inline quantum_state prepare_uniform( unsigned num_qubits, unsigned max_qubits = default_max_qubits )
{
  quantum_state s( num_qubits, max_qubits );
  for ( unsigned q = 0; q < num_qubits; ++q )
    apply_gate( s, gate_op::h( q ) );
  return s;
}

/*! \brief Reflection about the uniform state of `input_qubits`.
 *
 * Realized as H, X, MCZ, X, H over the listed qubits, which equals
 * -(2|s><s| - I); the global phase does not affect measurement.
 * Qubits outside the list must be in |0>.
 */
inline void apply_diffusion( quantum_state& state, std::span<unsigned const> input_qubits )
{
  if ( input_qubits.empty() )
    return;
  for ( auto q : input_qubits )
    apply_gate( state, gate_op::h( q ) );
  for ( auto q : input_qubits )
    apply_gate( state, gate_op::x( q ) );
  if ( input_qubits.size() == 1 )
  {
    apply_gate( state, gate_op::z( input_qubits.front() ) );
  }
  else
  {
    std::vector<unsigned> controls( input_qubits.begin(), input_qubits.end() - 1 );
    apply_gate( state, gate_op::mcz( std::move( controls ), input_qubits.back() ) );
  }
  for ( auto q : input_qubits )
    apply_gate( state, gate_op::x( q ) );
  for ( auto q : input_qubits )
    apply_gate( state, gate_op::h( q ) );
}

inline std::vector<unsigned> register_qubits( unsigned n )
{
  std::vector<unsigned> qs( n );
  for ( unsigned i = 0; i < n; ++i )
    qs[i] = i;
  return qs;
}

/// Prepares the uniform input register, then runs `iterations` rounds of oracle + diffusion.
inline quantum_state run_grover( phase_oracle const& oracle, std::uint64_t iterations, unsigned max_qubits = default_max_qubits )
{
  quantum_state s( oracle.total_qubits(), max_qubits );
  auto const inputs = register_qubits( oracle.n_inputs() );
  for ( auto q : inputs )
    apply_gate( s, gate_op::h( q ) );
  for ( std::uint64_t g = 0; g < iterations; ++g )
  {
    oracle.apply( s );
    apply_diffusion( s, inputs );
  }
  return s;
}

/// Probabilities of the leading `n_inputs` qubits, summed over the remaining ones.
inline std::vector<double> register_probabilities( quantum_state const& state, unsigned n_inputs )
{
  if ( n_inputs > state.num_qubits() )
    throw arity_error( "register of " + std::to_string( n_inputs ) + " qubits exceeds a " + std::to_string( state.num_qubits() ) + "-qubit state" );
  auto const shift = state.num_qubits() - n_inputs;
  std::vector<double> p( std::size_t{ 1 } << n_inputs, 0.0 );
  auto amps = state.amplitudes();
  for ( std::size_t i = 0; i < amps.size(); ++i )
    p[i >> shift] += std::norm( amps[i] );
  return p;
}

/// Rotation angle between the uniform state and the unmarked subspace.
inline double grover_angle( std::uint64_t c, std::uint64_t N )
{
  if ( N < 1 || c > N )
    throw config_error( "invalid marked count " + std::to_string( c ) + " of " + std::to_string( N ) );
  return std::asin( std::sqrt( static_cast<double>( c ) / static_cast<double>( N ) ) );
}

/// Total probability of the marked states after `g` iterations with c of N marked.
inline double success_probability( std::uint64_t g, std::uint64_t c, std::uint64_t N )
{
  auto const s = std::sin( static_cast<double>( 2 * g + 1 ) * grover_angle( c, N ) );
  return s * s;
}

struct grover_theory
{
  std::uint64_t N;
  std::uint64_t c;
  double theta;
  std::uint64_t g;

  static grover_theory make( std::uint64_t N, std::uint64_t c, std::uint64_t g ) { return { N, c, grover_angle( c, N ), g }; }

  double success_probability() const { return qgec::success_probability( g, c, N ); }
};

/*! \brief Starting iteration count of the threshold search.
 *
 * floor(pi / (4 * asin(sqrt(1/N))) - 1/2), i.e. the optimal count for a single
 * marked state, never below 1. Gives 5, 8, 12, 17 for N = 64, 128, 256, 512.
 */
inline std::uint64_t initial_iterations( std::uint64_t N )
{
  if ( N < 2 )
    throw config_error( "initial iteration count needs N >= 2" );
  auto const g = std::floor( std::numbers::pi / ( 4.0 * grover_angle( 1, N ) ) - 0.5 );
  return g < 1.0 ? 1 : static_cast<std::uint64_t>( g );
}

} // namespace qgec
