#pragma once

#include "netlist.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qgec
{

inline constexpr unsigned default_brute_force_limit = 20;

/*! \brief Two circuits over shared inputs plus their single-output indicator.
 *
 * `combined` is one netlist: input `i<k>` feeds input k of both circuits, the
 * gates of A and B are copied with `a_`/`b_` name prefixes, each output pair
 * drives an XOR `mx<k>`, and the XORs are OR-ed into `miter`. With a single
 * output pair the OR is omitted and `mx0` is the indicator.
 */
struct miter_instance
{
  circuit circuit_a;
  circuit circuit_b;
  circuit combined;
  unsigned n_inputs;
  std::uint64_t num_states; // 2^n_inputs
};

namespace detail
{

inline std::vector<gate> prefixed_gates( circuit const& c, std::string const& prefix, std::vector<std::string>& signal_names )
{
  // signal_names maps the circuit's signal ids to names in the combined netlist.
  std::vector<gate> out;
  out.reserve( c.gates().size() );
  for ( std::size_t i = 0; i < c.gates().size(); ++i )
  {
    auto const& g = c.gates()[i];
    gate copy{ prefix + g.out, g.kind, {} };
    for ( auto id : c.operand_ids( i ) )
      copy.operands.push_back( signal_names[id] );
    signal_names.push_back( copy.out );
    out.push_back( std::move( copy ) );
  }
  return out;
}

} // namespace detail

/// Positional output pairing: output k of A is compared with output k of B.
inline miter_instance build_miter( circuit const& a, circuit const& b )
{
  if ( a.num_inputs() != b.num_inputs() || a.num_outputs() != b.num_outputs() )
    throw arity_error( "cannot build miter: circuit A has " + std::to_string( a.num_inputs() ) + " inputs / " + std::to_string( a.num_outputs() ) +
                       " outputs, circuit B has " + std::to_string( b.num_inputs() ) + " inputs / " + std::to_string( b.num_outputs() ) + " outputs" );

  auto const n = a.num_inputs();
  std::vector<std::string> inputs;
  for ( std::size_t i = 0; i < n; ++i )
    inputs.push_back( "i" + std::to_string( i ) );

  std::vector<std::string> names_a = inputs;
  std::vector<std::string> names_b = inputs;
  auto gates = detail::prefixed_gates( a, "a_", names_a );
  auto gates_b = detail::prefixed_gates( b, "b_", names_b );
  gates.insert( gates.end(), std::make_move_iterator( gates_b.begin() ), std::make_move_iterator( gates_b.end() ) );

  std::vector<std::string> xors;
  for ( std::size_t k = 0; k < a.num_outputs(); ++k )
  {
    auto name = "mx" + std::to_string( k );
    gates.push_back( { name, gate_kind::xor_, { names_a[a.output_ids()[k]], names_b[b.output_ids()[k]] } } );
    xors.push_back( std::move( name ) );
  }

  std::string indicator = xors.front();
  if ( xors.size() > 1 )
  {
    indicator = "miter";
    gates.push_back( { indicator, gate_kind::or_, xors } );
  }

  auto name = a.name().empty() && b.name().empty() ? std::string( "miter" ) : "miter(" + a.name() + "," + b.name() + ")";
  circuit combined( std::move( name ), std::move( inputs ), std::move( gates ), { indicator } );
  return { a, b, std::move( combined ), static_cast<unsigned>( n ), std::uint64_t{ 1 } << n };
}

/// Indicator value for the pattern with numeric value `x` (no width check).
inline bool miter_eval( miter_instance const& m, std::uint64_t x )
{
  return evaluate( m.combined, x ).front() != 0;
}

inline bool miter_eval( miter_instance const& m, assignment const& x )
{
  return evaluate( m.combined, x ).front() != 0;
}

/// All distinguishing assignments in ascending numeric order.
inline std::vector<assignment> enumerate_counterexamples( miter_instance const& m, unsigned limit = default_brute_force_limit )
{
  if ( m.n_inputs > limit )
    throw limit_error( "brute-force enumeration over " + std::to_string( m.n_inputs ) + " inputs exceeds the limit of " + std::to_string( limit ) );
  std::vector<assignment> result;
  std::vector<std::uint8_t> values;
  auto const out = m.combined.output_ids().front();
  for ( std::uint64_t x = 0; x < m.num_states; ++x )
  {
    m.combined.evaluate_signals( x, values );
    if ( values[out] )
      result.emplace_back( m.n_inputs, x );
  }
  return result;
}

} // namespace qgec
