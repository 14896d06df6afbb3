#include "fixtures.hpp"

#include <qgec/bench.hpp>
#include <qgec/grover.hpp>
#include <qgec/oracle.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace qgec;

namespace
{

// Random netlist that also exercises repeated operands and every gate kind.
circuit random_small_circuit( unsigned n, unsigned gates, unsigned outputs, counter_rng& rng )
{
  static constexpr gate_kind kinds[] = { gate_kind::and_, gate_kind::or_,  gate_kind::xor_, gate_kind::xnor,  gate_kind::nand,
                                         gate_kind::nor,  gate_kind::not_, gate_kind::buf,  gate_kind::onehot };
  std::vector<std::string> inputs, signals;
  for ( unsigned i = 0; i < n; ++i )
    inputs.push_back( "x" + std::to_string( i ) );
  signals = inputs;
  std::vector<gate> gs;
  for ( unsigned g = 0; g < gates; ++g )
  {
    auto const kind = kinds[rng.below( std::size( kinds ) )];
    auto const arity = is_unary( kind ) ? 1 : 2 + rng.below( 3 );
    std::vector<std::string> ops;
    for ( std::size_t k = 0; k < arity; ++k )
      ops.push_back( signals[rng.below( signals.size() )] );
    gs.push_back( { "g" + std::to_string( g ), kind, ops } );
    signals.push_back( gs.back().out );
  }
  std::vector<std::string> outs;
  for ( unsigned o = 0; o < outputs; ++o )
    outs.push_back( signals[rng.below( signals.size() )] );
  return circuit( "", inputs, gs, outs );
}

struct backend_report
{
  double max_phase_error = 0.0;
  double max_ancilla_leak = 0.0;
};

// Applies the gate oracle to every input basis state (ancillas zeroed) and
// compares with the semantic sign.
backend_report compare_backends( miter_instance const& m )
{
  auto const sem = semantic_oracle( m );
  auto const gate = synthesize_gate_oracle( m );
  auto const shift = gate.ancillas();
  backend_report r;
  for ( std::uint64_t x = 0; x < m.num_states; ++x )
  {
    quantum_state s( gate.total_qubits() );
    s[0] = 0.0;
    s[x << shift] = 1.0;
    gate.apply( s );
    double const expected = sem.table()[x] ? -1.0 : 1.0;
    r.max_phase_error = std::max( r.max_phase_error, std::abs( s[x << shift] - amplitude( expected ) ) );
    for ( std::size_t i = 0; i < s.size(); ++i )
    {
      if ( i != ( x << shift ) )
        r.max_ancilla_leak = std::max( r.max_ancilla_leak, std::abs( s[i] ) );
    }
  }
  return r;
}

} // namespace

TEST( oracle, marks_single_state_of_two_qubits )
{
  auto const o = phase_oracle::from_marked( 2, { 1 } );
  auto s = prepare_uniform( 2 );
  o.apply( s );
  std::vector<double> const expected{ 0.5, -0.5, 0.5, 0.5 };
  for ( std::size_t i = 0; i < 4; ++i )
    EXPECT_NEAR( std::abs( s[i] - amplitude( expected[i] ) ), 0.0, 1e-15 );
  // phase only: probabilities unchanged
  for ( auto p : probabilities( s ) )
    EXPECT_NEAR( p, 0.25, 1e-15 );
}

TEST( oracle, empty_marked_set_is_identity )
{
  auto const o = phase_oracle::from_marked( 3, {} );
  auto s = prepare_uniform( 3 );
  apply_gate( s, gate_op::z( 1 ) );
  auto const before = s;
  o.apply( s );
  for ( std::size_t i = 0; i < s.size(); ++i )
    EXPECT_EQ( s[i], before[i] );
}

TEST( oracle, semantic_five_input_signs )
{
  auto const m = build_miter( test::onehot_circuit(), test::or_circuit() );
  auto const o = semantic_oracle( m );
  auto s = prepare_uniform( 5 );
  o.apply( s );
  for ( std::uint64_t x = 0; x < 32; ++x )
  {
    bool const marked = x == 0b11011 || x == 0b11101 || x == 0b11110 || x == 0b11111;
    EXPECT_EQ( s[x].real() < 0, marked ) << x;
  }
}

TEST( oracle, gate_five_input_matches_semantic )
{
  auto const m = build_miter( test::onehot_circuit(), test::or_circuit() );
  auto const gate = synthesize_gate_oracle( m );
  EXPECT_EQ( gate.backend(), oracle_backend::gate );
  EXPECT_EQ( gate.ancillas(), 9u );
  EXPECT_EQ( gate.total_qubits(), 14u );
  auto const r = compare_backends( m );
  EXPECT_LT( r.max_phase_error, 1e-10 );
  EXPECT_LT( r.max_ancilla_leak, 1e-10 );
}

TEST( oracle, gate_self_miter_is_identity_on_inputs )
{
  auto const m = build_miter( test::onehot_circuit(), test::onehot_circuit() );
  auto const gate = synthesize_gate_oracle( m );
  auto s = run_grover( gate, 0 );
  auto const before = s;
  gate.apply( s );
  for ( std::size_t i = 0; i < s.size(); ++i )
    EXPECT_NEAR( std::abs( s[i] - before[i] ), 0.0, 1e-12 );
}

TEST( oracle, gate_complement_pair_flips_everything )
{
  auto const m = build_miter( test::passthrough(), test::inverter() );
  auto const gate = synthesize_gate_oracle( m );
  for ( std::uint64_t x = 0; x < 2; ++x )
  {
    quantum_state s( gate.total_qubits() );
    s[0] = 0.0;
    s[x << gate.ancillas()] = 1.0;
    gate.apply( s );
    EXPECT_NEAR( s[x << gate.ancillas()].real(), -1.0, 1e-12 );
  }
}

TEST( oracle, backends_agree_on_random_miters )
{
  counter_rng rng( 31337 );
  for ( int trial = 0; trial < 150; ++trial )
  {
    auto const n = 1 + static_cast<unsigned>( rng.below( 3 ) );
    auto const outs = 1 + static_cast<unsigned>( rng.below( 2 ) );
    auto const a = random_small_circuit( n, static_cast<unsigned>( rng.below( 4 ) ), outs, rng );
    auto const b = random_small_circuit( n, static_cast<unsigned>( rng.below( 4 ) ), outs, rng );
    auto const m = build_miter( a, b );
    auto const r = compare_backends( m );
    ASSERT_LT( r.max_phase_error, 1e-10 ) << serialize_circuit( a ) << "\n--\n" << serialize_circuit( b );
    ASSERT_LT( r.max_ancilla_leak, 1e-10 ) << serialize_circuit( a ) << "\n--\n" << serialize_circuit( b );
  }
}

TEST( oracle, backends_agree_on_six_input_miters )
{
  counter_rng rng( 7 );
  for ( int trial = 0; trial < 20; ++trial )
  {
    auto const a = random_small_circuit( 6, 3, 1, rng );
    auto const b = random_small_circuit( 6, 3, 1, rng );
    auto const r = compare_backends( build_miter( a, b ) );
    EXPECT_LT( r.max_phase_error, 1e-10 );
    EXPECT_LT( r.max_ancilla_leak, 1e-10 );
  }
  // generated instance with a tiny base circuit
  auto const [a, b] = generate_instance( { 4, 1, 99, 1 } );
  auto const r = compare_backends( build_miter( a, b ) );
  EXPECT_LT( r.max_phase_error, 1e-10 );
  EXPECT_LT( r.max_ancilla_leak, 1e-10 );
}

TEST( oracle, involution_and_phase_only )
{
  auto const m = build_miter( test::onehot_circuit(), test::or_circuit() );
  for ( auto const& o : { semantic_oracle( m ), synthesize_gate_oracle( m ) } )
  {
    auto s = run_grover( o, 0 );
    apply_gate( s, gate_op::x( 2 ) ); // break the symmetry a little
    apply_gate( s, gate_op::h( 4 ) );
    auto const before = s;
    o.apply( s );
    auto const p_before = probabilities( before );
    auto const p_after = probabilities( s );
    for ( std::size_t i = 0; i < s.size(); ++i )
      EXPECT_NEAR( p_before[i], p_after[i], 1e-12 );
    o.apply( s );
    for ( std::size_t i = 0; i < s.size(); ++i )
      EXPECT_NEAR( std::abs( s[i] - before[i] ), 0.0, 1e-10 );
  }
}

TEST( oracle, marked_set_counts )
{
  EXPECT_EQ( compute_marked_set( build_miter( test::onehot_circuit(), test::or_circuit() ) ).count(), 4u );
  EXPECT_EQ( compute_marked_set( build_miter( test::or_circuit(), test::or_circuit() ) ).count(), 0u );
  auto const [a, b] = generate_instance( { 6, 13, 5, 0 } );
  auto const ms = compute_marked_set( build_miter( a, b ) );
  EXPECT_EQ( ms.count(), 13u );
  EXPECT_TRUE( std::is_sorted( ms.assignments.begin(), ms.assignments.end() ) );
}

TEST( oracle, gate_budget )
{
  auto const m = build_miter( test::onehot_circuit(), test::or_circuit() );
  EXPECT_THROW( synthesize_gate_oracle( m, 13 ), limit_error );
  EXPECT_NO_THROW( synthesize_gate_oracle( m, 14 ) );
}

TEST( oracle, wrong_register_size )
{
  auto const m = build_miter( test::onehot_circuit(), test::or_circuit() );
  auto s = prepare_uniform( 5 );
  EXPECT_THROW( synthesize_gate_oracle( m ).apply( s ), arity_error );
  auto t = prepare_uniform( 4 );
  EXPECT_THROW( semantic_oracle( m ).apply( t ), arity_error );
}

TEST( oracle, dump_lists_program )
{
  auto const m = build_miter( test::passthrough(), test::inverter() );
  auto const text = synthesize_gate_oracle( m ).dump();
  // NOT: CX + X, XOR: 2 CX, Z, then the 4 compute ops reversed
  EXPECT_EQ( text, "# gate oracle, 1 inputs, 2 ancillas, result qubit 2\n"
                   "# q1 = b_na\n"
                   "# q2 = mx0\n"
                   "CX c0 t1\n"
                   "X t1\n"
                   "CX c0 t2\n"
                   "CX c1 t2\n"
                   "Z t2\n"
                   "CX c1 t2\n"
                   "CX c0 t2\n"
                   "X t1\n"
                   "CX c0 t1\n" );
  EXPECT_EQ( semantic_oracle( m ).dump(), "# semantic oracle, 1 inputs, 2 marked\n" );
}
