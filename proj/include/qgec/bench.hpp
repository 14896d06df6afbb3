#pragma once

#include "checker.hpp"
#include "grover.hpp"
#include "netlist.hpp"
#include "qsim.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

namespace qgec
{

struct instance_spec
{
  unsigned n_bits = 6;
  std::uint64_t c = 0;
  std::uint64_t seed = 0;
  /// Gates in the random base circuit; 0 picks 2 * n_bits.
  unsigned base_gates = 0;
};

namespace detail
{

inline circuit random_base_circuit( unsigned n, unsigned num_gates, counter_rng& rng )
{
  static constexpr gate_kind kinds[] = { gate_kind::and_, gate_kind::or_, gate_kind::xor_, gate_kind::nand,
                                         gate_kind::nor,  gate_kind::xnor, gate_kind::not_, gate_kind::onehot };
  std::vector<std::string> inputs;
  for ( unsigned i = 0; i < n; ++i )
    inputs.push_back( "x" + std::to_string( i ) );
  std::vector<std::string> signals = inputs;
  std::vector<gate> gates;
  for ( unsigned g = 0; g < num_gates; ++g )
  {
    auto kind = kinds[rng.below( std::size( kinds ) )];
    std::size_t arity = is_unary( kind ) ? 1 : ( signals.size() >= 3 && rng.below( 3 ) == 0 ? 3 : 2 );
    if ( !is_unary( kind ) && signals.size() < 2 )
    {
      kind = gate_kind::not_;
      arity = 1;
    }
    // distinct operands; the newest signal is always used so the DAG stays connected
    std::vector<std::string> operands{ signals.back() };
    while ( operands.size() < arity )
    {
      auto const& cand = signals[rng.below( signals.size() )];
      if ( std::find( operands.begin(), operands.end(), cand ) == operands.end() )
        operands.push_back( cand );
    }
    auto name = "g" + std::to_string( g );
    gates.push_back( { name, kind, std::move( operands ) } );
    signals.push_back( std::move( name ) );
  }
  std::vector<std::string> outputs{ signals.back() };
  if ( signals.size() > 1 )
    outputs.push_back( signals[signals.size() - 2] );
  return circuit( "A", std::move( inputs ), std::move( gates ), std::move( outputs ) );
}

} // namespace detail

/*! \brief Random circuit pair whose miter has exactly `spec.c` counterexamples.
 *
 * A is a seeded random gate DAG. B copies A and XORs A's first output with the
 * indicator of a uniformly chosen set of `c` input patterns, built as one AND
 * minterm per pattern combined by a parity gate (the minterms are disjoint).
 * For c = 0 the XOR is taken with a constant-0 gate instead.
 */
inline std::pair<circuit, circuit> generate_instance( instance_spec const& spec )
{
  auto const n = spec.n_bits;
  if ( n < 1 || n > default_brute_force_limit )
    throw config_error( "instance width must be in [1, " + std::to_string( default_brute_force_limit ) + "], got " + std::to_string( n ) );
  auto const N = std::uint64_t{ 1 } << n;
  if ( spec.c > N )
    throw config_error( "requested " + std::to_string( spec.c ) + " counterexamples but only " + std::to_string( N ) + " assignments exist" );

  counter_rng rng( spec.seed );
  auto a = detail::random_base_circuit( n, spec.base_gates ? spec.base_gates : 2 * n, rng );

  // partial Fisher-Yates over [0, N)
  std::vector<std::uint64_t> pool( N );
  for ( std::uint64_t i = 0; i < N; ++i )
    pool[i] = i;
  for ( std::uint64_t i = 0; i < spec.c; ++i )
    std::swap( pool[i], pool[i + rng.below( N - i )] );
  std::vector<std::uint64_t> minterms( pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>( spec.c ) );
  std::sort( minterms.begin(), minterms.end() );

  auto gates = a.gates();
  auto const& in = a.inputs();
  std::string indicator;
  if ( spec.c == 0 )
  {
    gates.push_back( { "zero", gate_kind::xor_, { in[0], in[0] } } );
    indicator = "zero";
  }
  else
  {
    for ( unsigned i = 0; i < n; ++i )
      gates.push_back( { "nx" + std::to_string( i ), gate_kind::not_, { in[i] } } );
    std::vector<std::string> terms;
    for ( std::size_t j = 0; j < minterms.size(); ++j )
    {
      std::vector<std::string> lits;
      for ( unsigned i = 0; i < n; ++i )
      {
        bool const one = ( minterms[j] >> ( n - 1 - i ) ) & 1u;
        lits.push_back( one ? in[i] : "nx" + std::to_string( i ) );
      }
      auto name = "mt" + std::to_string( j );
      gates.push_back( { name, lits.size() == 1 ? gate_kind::buf : gate_kind::and_, std::move( lits ) } );
      terms.push_back( std::move( name ) );
    }
    if ( terms.size() == 1 )
    {
      indicator = terms.front();
    }
    else
    {
      gates.push_back( { "ind", gate_kind::xor_, terms } );
      indicator = "ind";
    }
  }
  gates.push_back( { "y0", gate_kind::xor_, { a.outputs().front(), indicator } } );
  auto outputs = a.outputs();
  outputs.front() = "y0";
  circuit b( "B", a.inputs(), std::move( gates ), std::move( outputs ) );
  return { std::move( a ), std::move( b ) };
}

/// Counterexample counts per input width for the default benchmark suite.
inline std::map<unsigned, std::vector<std::uint64_t>> default_suite_c_values()
{
  return { { 6, { 0, 1, 3, 6, 13 } }, { 7, { 0, 1, 6, 13, 26 } }, { 8, { 0, 3, 13, 26, 51 } }, { 9, { 0, 5, 26, 51, 102 } } };
}

struct experiment_record
{
  unsigned bits = 0;
  std::uint64_t c_true = 0;
  double phi = 0.0;
  unsigned run = 0;
  std::optional<verdict> result; // empty on error
  bool correct = false;
  std::uint64_t accumulated_iterations = 0;
  std::optional<std::uint64_t> successful_g;
  std::optional<double> wall_ms;
  std::string error;
};

struct suite_config
{
  std::vector<unsigned> bits{ 6, 7, 8, 9 };
  std::map<unsigned, std::vector<std::uint64_t>> c_values = default_suite_c_values();
  std::vector<double> phis{ 0.1, 0.3, 0.5, 0.7, 0.9 };
  unsigned runs = 10;
  std::uint64_t seed = 0;
  std::uint64_t shots_factor = 8;
  oracle_backend backend = oracle_backend::semantic;
  bool verify = true;
  unsigned jobs = 0; // 0 = hardware concurrency
  bool timing = false;
};

/// Seed of the instance for (bits, c); shared by every phi and run.
inline std::uint64_t instance_seed( std::uint64_t master, unsigned bits, std::uint64_t c )
{
  return derive_seed( derive_seed( master, bits ), c );
}

/*! \brief Runs the cross product bits x c x phi x run.
 *
 * Run r of an instance uses checker seed derive_seed(instance_seed, r) for
 * every phi. Records are returned sorted by (bits, c, phi, run). Failures are
 * recorded per record.
 */
inline std::vector<experiment_record> run_suite( suite_config const& cfg )
{
  std::vector<experiment_record> tasks;
  for ( auto bits : cfg.bits )
  {
    auto it = cfg.c_values.find( bits );
    if ( it == cfg.c_values.end() )
      continue;
    auto cs = it->second;
    std::sort( cs.begin(), cs.end() );
    cs.erase( std::unique( cs.begin(), cs.end() ), cs.end() );
    for ( auto c : cs )
      for ( auto phi : cfg.phis )
        for ( unsigned r = 0; r < cfg.runs; ++r )
        {
          experiment_record rec;
          rec.bits = bits;
          rec.c_true = c;
          rec.phi = phi;
          rec.run = r;
          tasks.push_back( rec );
        }
  }
  std::sort( tasks.begin(), tasks.end(), []( auto const& x, auto const& y ) {
    return std::tie( x.bits, x.c_true, x.phi, x.run ) < std::tie( y.bits, y.c_true, y.phi, y.run );
  } );

  auto execute = [&]( experiment_record& rec ) {
    auto const start = std::chrono::steady_clock::now();
    try
    {
      auto const iseed = instance_seed( cfg.seed, rec.bits, rec.c_true );
      auto const [a, b] = generate_instance( { rec.bits, rec.c_true, iseed, 0 } );
      checker_config cc;
      cc.phi = rec.phi;
      cc.shots_factor = cfg.shots_factor;
      cc.seed = derive_seed( iseed, rec.run );
      cc.backend = cfg.backend;
      cc.verify = cfg.verify;
      auto const out = check_equivalence( a, b, cc );
      rec.result = out.result;
      rec.correct = ( out.result == verdict::non_equivalent ) == ( rec.c_true > 0 );
      rec.accumulated_iterations = out.accumulated_iterations;
      rec.successful_g = out.successful_g;
    }
    catch ( std::exception const& e )
    {
      rec.error = e.what();
      rec.correct = false;
    }
    if ( cfg.timing )
      rec.wall_ms = std::chrono::duration<double, std::milli>( std::chrono::steady_clock::now() - start ).count();
  };

  auto workers = cfg.jobs ? cfg.jobs : std::max( 1u, std::thread::hardware_concurrency() );
  workers = static_cast<unsigned>( std::min<std::size_t>( workers, std::max<std::size_t>( 1, tasks.size() ) ) );
  std::atomic<std::size_t> next{ 0 };
  {
    std::vector<std::jthread> pool;
    for ( unsigned w = 0; w < workers; ++w )
      pool.emplace_back( [&] {
        for ( auto i = next++; i < tasks.size(); i = next++ )
          execute( tasks[i] );
      } );
  }
  return tasks;
}

/// Shortest decimal form of `v` that round-trips ("0.3", not "0.300000").
inline std::string format_double( double v )
{
  char buf[64];
  auto const res = std::to_chars( buf, buf + sizeof( buf ), v );
  return std::string( buf, res.ptr );
}

inline std::string records_csv( std::vector<experiment_record> const& records )
{
  std::string s = "bits,c_true,phi,run,verdict,correct,accumulated_iterations,successful_g,wall_ms\n";
  for ( auto const& r : records )
  {
    s += std::to_string( r.bits ) + ',' + std::to_string( r.c_true ) + ',' + format_double( r.phi ) + ',' + std::to_string( r.run ) + ',';
    s += r.result ? ( *r.result == verdict::equivalent ? "equivalent" : "non_equivalent" ) : "error";
    s += ',';
    s += r.correct ? "true" : "false";
    s += ',' + std::to_string( r.accumulated_iterations ) + ',';
    if ( r.successful_g )
      s += std::to_string( *r.successful_g );
    s += ',';
    if ( r.wall_ms )
    {
      char buf[32];
      std::snprintf( buf, sizeof( buf ), "%.3f", *r.wall_ms );
      s += buf;
    }
    s += '\n';
  }
  return s;
}

struct table_cell
{
  bool all_correct = true;
  std::uint64_t modal_iterations = 0;
};

/// Per (bits, c, phi): "-" unless every run was correct, else the most frequent accumulated count (smallest on ties).
inline std::map<std::tuple<unsigned, std::uint64_t, double>, table_cell> tabulate( std::vector<experiment_record> const& records )
{
  std::map<std::tuple<unsigned, std::uint64_t, double>, std::map<std::uint64_t, unsigned>> hist;
  std::map<std::tuple<unsigned, std::uint64_t, double>, table_cell> cells;
  for ( auto const& r : records )
  {
    auto const key = std::make_tuple( r.bits, r.c_true, r.phi );
    auto& cell = cells[key];
    cell.all_correct = cell.all_correct && r.correct;
    ++hist[key][r.accumulated_iterations];
  }
  for ( auto& [key, cell] : cells )
  {
    unsigned best = 0;
    for ( auto const& [iters, n] : hist[key] )
    {
      if ( n > best )
      {
        best = n;
        cell.modal_iterations = iters;
      }
    }
  }
  return cells;
}

inline std::string format_table( std::vector<experiment_record> const& records )
{
  auto const cells = tabulate( records );
  std::vector<double> phis;
  std::vector<std::pair<unsigned, std::uint64_t>> rows;
  for ( auto const& [key, cell] : cells )
  {
    auto const& [bits, c, phi] = key;
    if ( std::find( phis.begin(), phis.end(), phi ) == phis.end() )
      phis.push_back( phi );
    if ( rows.empty() || rows.back() != std::make_pair( bits, c ) )
      rows.emplace_back( bits, c );
  }
  std::sort( phis.begin(), phis.end() );

  auto pad = []( std::string s, std::size_t w ) {
    if ( s.size() < w )
      s.insert( 0, w - s.size(), ' ' );
    return s;
  };
  std::string out = pad( "bits", 4 ) + pad( "c", 6 );
  for ( auto phi : phis )
    out += pad( format_double( phi ), 7 );
  out += "\n";
  for ( auto const& [bits, c] : rows )
  {
    out += pad( std::to_string( bits ), 4 ) + pad( std::to_string( c ), 6 );
    for ( auto phi : phis )
    {
      auto it = cells.find( std::make_tuple( bits, c, phi ) );
      std::string v = it == cells.end() ? "" : ( it->second.all_correct ? std::to_string( it->second.modal_iterations ) : "-" );
      out += pad( v, 7 );
    }
    out += "\n";
  }
  return out;
}

/// CSV of (g, P) for g = 0..g_max.
inline std::string theory_curve_csv( std::uint64_t N, std::uint64_t c, std::uint64_t g_max )
{
  std::string s = "g,P\n";
  char buf[64];
  for ( std::uint64_t g = 0; g <= g_max; ++g )
  {
    std::snprintf( buf, sizeof( buf ), "%llu,%.12f\n", static_cast<unsigned long long>( g ), success_probability( g, c, N ) );
    s += buf;
  }
  return s;
}

} // namespace qgec
