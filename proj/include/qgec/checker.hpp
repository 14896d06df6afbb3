#pragma once

#include "grover.hpp"
#include "miter.hpp"
#include "oracle.hpp"
#include "qsim.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qgec
{

struct checker_config
{
  /// Threshold on 1 - m_{i+1}/m_i that separates two adjacent sorted counts.
  double phi = 0.3;
  /// Shots per attempt = shots_factor * N.
  std::uint64_t shots_factor = 8;
  std::uint64_t seed = 0;
  oracle_backend backend = oracle_backend::semantic;
  /// Classically re-check every candidate before reporting it.
  bool verify = true;
  unsigned max_qubits = default_max_qubits;

  void validate() const
  {
    if ( !( phi > 0.0 && phi < 1.0 ) )
      throw config_error( "phi must lie in (0, 1), got " + std::to_string( phi ) );
    if ( shots_factor < 1 )
      throw config_error( "shots factor must be at least 1" );
  }
};

enum class verdict
{
  equivalent,
  non_equivalent
};

inline std::string_view to_string( verdict v )
{
  return v == verdict::equivalent ? "EQUIVALENT" : "NON_EQUIVALENT";
}

struct ranked_count
{
  std::uint64_t index;
  std::uint64_t count;
};

/// Measured states by descending count, ties by ascending basis index.
inline std::vector<ranked_count> ranked_counts( measurement_histogram const& h )
{
  std::vector<ranked_count> r;
  r.reserve( h.counts.size() );
  for ( auto const& [idx, cnt] : h.counts )
    r.push_back( { idx, cnt } );
  std::stable_sort( r.begin(), r.end(), []( auto const& a, auto const& b ) { return a.count > b.count; } );
  return r;
}

struct split_decision
{
  bool found = false;
  /// Number of states in the top group (1-based position of the boundary).
  std::size_t split_index = 0;
  std::vector<std::uint64_t> top_group;
  /// The boundary was placed after the last measured state (i == |m|).
  bool all_measured_consumed = false;
};

/*! \brief Finds the first boundary between adjacent sorted counts.
 *
 * Scans i = 1 .. min(|m|, N/2) and stops at the first i with
 * 1 - m_{i+1}/m_i > phi, or at i == |m|. Because the scan never passes N/2,
 * reaching i == |m| implies |m| <= N/2.
 */
inline split_decision split_histogram( measurement_histogram const& h, double phi, std::uint64_t N )
{
  split_decision d;
  auto const ranking = ranked_counts( h );
  auto const measured = ranking.size();
  auto const bound = std::min<std::uint64_t>( measured, N / 2 );
  for ( std::size_t i = 1; i <= bound; ++i )
  {
    bool const last = i == measured;
    bool const gap = !last && 1.0 - static_cast<double>( ranking[i].count ) / static_cast<double>( ranking[i - 1].count ) > phi;
    if ( gap || last )
    {
      d.found = true;
      d.split_index = i;
      d.all_measured_consumed = last;
      for ( std::size_t k = 0; k < i; ++k )
        d.top_group.push_back( ranking[k].index );
      return d;
    }
  }
  return d;
}

/// Keeps the candidates on which the miter evaluates to 1, in input order.
inline std::vector<assignment> verify_candidates( miter_instance const& m, std::vector<assignment> const& candidates )
{
  std::vector<assignment> out;
  for ( auto const& c : candidates )
  {
    if ( miter_eval( m, c ) )
      out.push_back( c );
  }
  return out;
}

enum class attempt_result
{
  no_split,
  split_rejected,
  counterexamples_found
};

inline std::string_view to_string( attempt_result r )
{
  switch ( r )
  {
  case attempt_result::no_split: return "no_split";
  case attempt_result::split_rejected: return "split_rejected";
  case attempt_result::counterexamples_found: return "counterexamples_found";
  }
  return "?";
}

struct attempt
{
  std::uint64_t g = 0;
  std::uint64_t shots = 0;
  std::size_t measured = 0;
  std::uint64_t max_count = 0;
  split_decision split;
  /// Whether the top group (rather than the remaining measured states) held the candidates.
  bool top_side = false;
  std::size_t candidates = 0;
  std::size_t verified = 0;
  attempt_result result = attempt_result::no_split;
};

struct check_outcome
{
  verdict result = verdict::equivalent;
  std::vector<assignment> counterexamples;
  std::vector<attempt> attempts;
  std::uint64_t accumulated_iterations = 0;
  std::optional<std::uint64_t> successful_g;
  unsigned n_inputs = 0;
  std::uint64_t num_states = 0;
};

/*! \brief Threshold search over decreasing Grover iteration counts.
 *
 * Starting from initial_iterations(N), each attempt runs Grover with g
 * iterations, samples shots_factor * N shots and looks for a split. On a split
 * the most frequent state is evaluated classically: if it is a counterexample
 * the top group holds the candidates, otherwise the remaining measured states
 * do. Verified candidates end the search with NON_EQUIVALENT; an empty
 * verified set, or no split, moves on to g - 1. Exhausting g reports
 * EQUIVALENT.
 *
 * Attempt k samples with derive_seed(cfg.seed, k).
 */
inline check_outcome check_miter( miter_instance const& m, checker_config const& cfg )
{
  cfg.validate();
  auto const oracle = make_oracle( m, cfg.backend, cfg.max_qubits );
  auto const N = m.num_states;
  auto const shots = cfg.shots_factor * N;

  check_outcome out;
  out.n_inputs = m.n_inputs;
  out.num_states = N;

  std::uint64_t k = 0;
  for ( auto g = initial_iterations( N ); g > 0; --g, ++k )
  {
    auto const state = run_grover( oracle, g, cfg.max_qubits );
    auto const probs = register_probabilities( state, m.n_inputs );
    auto const hist = sample_distribution( probs, shots, derive_seed( cfg.seed, k ) );
    out.accumulated_iterations += g;

    attempt a;
    a.g = g;
    a.shots = shots;
    a.measured = hist.measured_count();
    a.split = split_histogram( hist, cfg.phi, N );
    auto const ranking = ranked_counts( hist );
    a.max_count = ranking.empty() ? 0 : ranking.front().count;

    if ( a.split.found )
    {
      a.top_side = miter_eval( m, ranking.front().index );
      std::vector<assignment> candidates;
      if ( a.top_side )
      {
        for ( auto idx : a.split.top_group )
          candidates.emplace_back( m.n_inputs, idx );
      }
      else
      {
        for ( auto i = a.split.split_index; i < ranking.size(); ++i )
          candidates.emplace_back( m.n_inputs, ranking[i].index );
      }
      a.candidates = candidates.size();
      auto confirmed = cfg.verify ? verify_candidates( m, candidates ) : candidates;
      a.verified = confirmed.size();
      if ( !confirmed.empty() )
      {
        a.result = attempt_result::counterexamples_found;
        out.attempts.push_back( std::move( a ) );
        std::sort( confirmed.begin(), confirmed.end() );
        out.result = verdict::non_equivalent;
        out.counterexamples = std::move( confirmed );
        out.successful_g = g;
        return out;
      }
      a.result = attempt_result::split_rejected;
    }
    out.attempts.push_back( std::move( a ) );
  }
  return out;
}

inline check_outcome check_equivalence( circuit const& a, circuit const& b, checker_config const& cfg )
{
  return check_miter( build_miter( a, b ), cfg );
}

inline std::string format_report( check_outcome const& o, checker_config const& cfg )
{
  std::ostringstream os;
  os << "verdict: " << to_string( o.result ) << "\n";
  os << "inputs: " << o.n_inputs << "\n";
  os << "states: " << o.num_states << "\n";
  os << "phi: " << cfg.phi << "\n";
  os << "shots_per_attempt: " << cfg.shots_factor * o.num_states << "\n";
  os << "backend: " << to_string( cfg.backend ) << "\n";
  os << "seed: " << cfg.seed << "\n";
  os << "accumulated_iterations: " << o.accumulated_iterations << "\n";
  os << "successful_g: ";
  if ( o.successful_g )
    os << *o.successful_g;
  else
    os << "-";
  os << "\n";
  os << "counterexamples: " << o.counterexamples.size() << "\n";
  for ( auto const& c : o.counterexamples )
    os << "  " << c.to_string() << "\n";
  os << "attempts: " << o.attempts.size() << "\n";
  for ( auto const& a : o.attempts )
  {
    os << "  g=" << a.g << " measured=" << a.measured << " max_count=" << a.max_count;
    if ( a.split.found )
      os << " split=" << a.split.split_index << ( a.split.all_measured_consumed ? "(all)" : "" ) << " side=" << ( a.top_side ? "top" : "rest" )
         << " candidates=" << a.candidates << " verified=" << a.verified;
    else
      os << " split=-";
    os << " result=" << to_string( a.result ) << "\n";
  }
  return os.str();
}

/// One row per attempt.
inline std::string attempts_csv( check_outcome const& o )
{
  std::ostringstream os;
  os << "g,shots,measured,max_count,split_found,split_index,all_measured_consumed,side,candidates,verified,result\n";
  for ( auto const& a : o.attempts )
  {
    os << a.g << ',' << a.shots << ',' << a.measured << ',' << a.max_count << ',' << ( a.split.found ? 1 : 0 ) << ',' << a.split.split_index << ','
       << ( a.split.all_measured_consumed ? 1 : 0 ) << ',' << ( a.split.found ? ( a.top_side ? "top" : "rest" ) : "" ) << ',' << a.candidates << ','
       << a.verified << ',' << to_string( a.result ) << '\n';
  }
  return os.str();
}

} // namespace qgec
