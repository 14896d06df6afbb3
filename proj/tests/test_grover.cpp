#include "fixtures.hpp"

#include <qgec/grover.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace qgec;

namespace
{

// Grover by explicit dense matrices O = I - 2|S><S| and D = 2|s><s| - I.
std::vector<double> dense_grover_probabilities( std::size_t N, std::vector<std::uint64_t> const& marked, unsigned g )
{
  std::vector<double> is_marked( N, 0.0 );
  for ( auto m : marked )
    is_marked[m] = 1.0;
  std::vector<std::vector<double>> O( N, std::vector<double>( N, 0.0 ) ), D = O;
  double const u = 1.0 / static_cast<double>( N );
  for ( std::size_t i = 0; i < N; ++i )
  {
    O[i][i] = 1.0 - 2.0 * is_marked[i];
    for ( std::size_t j = 0; j < N; ++j )
      D[i][j] = 2.0 * u - ( i == j ? 1.0 : 0.0 );
  }
  std::vector<double> v( N, std::sqrt( u ) );
  auto mul = []( auto const& M, std::vector<double> const& x ) {
    std::vector<double> y( x.size(), 0.0 );
    for ( std::size_t i = 0; i < x.size(); ++i )
      for ( std::size_t j = 0; j < x.size(); ++j )
        y[i] += M[i][j] * x[j];
    return y;
  };
  for ( unsigned k = 0; k < g; ++k )
    v = mul( D, mul( O, v ) );
  for ( auto& x : v )
    x = x * x;
  return v;
}

std::vector<std::uint64_t> spread_marked( std::uint64_t N, std::uint64_t c, std::uint64_t seed )
{
  std::vector<std::uint64_t> pool( N );
  std::iota( pool.begin(), pool.end(), 0 );
  counter_rng rng( seed );
  for ( std::uint64_t i = 0; i < c; ++i )
    std::swap( pool[i], pool[i + rng.below( N - i )] );
  pool.resize( c );
  return pool;
}

} // namespace

TEST( grover, prepare_uniform )
{
  for ( unsigned q : { 1u, 2u, 5u } )
  {
    auto const s = prepare_uniform( q );
    double const expected = 1.0 / std::sqrt( static_cast<double>( std::size_t{ 1 } << q ) );
    ASSERT_EQ( s.size(), std::size_t{ 1 } << q );
    for ( auto const& a : s.amplitudes() )
      EXPECT_NEAR( std::abs( a - amplitude( expected ) ), 0.0, 1e-15 );
  }
  EXPECT_THROW( prepare_uniform( 27 ), limit_error );
}

TEST( grover, diffusion_fixes_uniform_state )
{
  auto s = prepare_uniform( 4 );
  auto const qs = register_qubits( 4 );
  apply_diffusion( s, qs );
  for ( auto p : probabilities( s ) )
    EXPECT_NEAR( p, 1.0 / 16, 1e-12 );
}

TEST( grover, diffusion_after_single_mark_concentrates )
{
  auto s = prepare_uniform( 2 );
  phase_oracle::from_marked( 2, { 1 } ).apply( s );
  auto const qs = register_qubits( 2 );
  apply_diffusion( s, qs );
  auto const p = probabilities( s );
  EXPECT_NEAR( p[0], 0.0, 1e-12 );
  EXPECT_NEAR( p[1], 1.0, 1e-12 );
  EXPECT_NEAR( p[2], 0.0, 1e-12 );
  EXPECT_NEAR( p[3], 0.0, 1e-12 );
}

TEST( grover, diffusion_is_an_involution )
{
  auto s = prepare_uniform( 3 );
  apply_gate( s, gate_op::z( 0 ) );
  apply_gate( s, gate_op::mcx( { 0, 1 }, 2 ) );
  auto const before = probabilities( s );
  auto const qs = register_qubits( 3 );
  apply_diffusion( s, qs );
  apply_diffusion( s, qs );
  auto const after = probabilities( s );
  for ( std::size_t i = 0; i < before.size(); ++i )
    EXPECT_NEAR( before[i], after[i], 1e-10 );
}

TEST( grover, diffusion_single_qubit )
{
  auto s = new_state( 1 );
  apply_gate( s, gate_op::h( 0 ) );
  phase_oracle::from_marked( 1, { 0 } ).apply( s );
  std::vector<unsigned> const q0{ 0 };
  apply_diffusion( s, q0 );
  // c/N = 1/2: still uniform
  for ( auto p : probabilities( s ) )
    EXPECT_NEAR( p, 0.5, 1e-12 );
}

TEST( grover, matches_dense_matrix_reference )
{
  for ( unsigned n = 1; n <= 5; ++n )
  {
    std::uint64_t const N = std::uint64_t{ 1 } << n;
    for ( std::uint64_t c = 0; c <= N; c += ( N > 8 ? 3 : 1 ) )
    {
      auto const marked = spread_marked( N, c, n * 100 + c );
      auto const o = phase_oracle::from_marked( n, marked );
      for ( unsigned g = 0; g <= 6; ++g )
      {
        auto const p = probabilities( run_grover( o, g ) );
        auto const ref = dense_grover_probabilities( N, marked, g );
        for ( std::size_t i = 0; i < N; ++i )
          ASSERT_NEAR( p[i], ref[i], 1e-10 ) << "N=" << N << " c=" << c << " g=" << g;
      }
    }
  }
}

TEST( grover, five_input_pair_one_iteration )
{
  auto const m = build_miter( test::onehot_circuit(), test::or_circuit() );
  auto const p = probabilities( run_grover( semantic_oracle( m ), 1 ) );
  double marked_total = 0.0;
  for ( std::uint64_t x = 0; x < 32; ++x )
  {
    if ( miter_eval( m, x ) )
    {
      EXPECT_NEAR( p[x], 25.0 / 128.0, 1e-12 );
      marked_total += p[x];
    }
  }
  EXPECT_NEAR( marked_total, 0.78125, 1e-12 );
}

TEST( grover, gate_backend_gives_same_register_distribution )
{
  auto const m = build_miter( test::onehot_circuit(), test::or_circuit() );
  auto const sem = semantic_oracle( m );
  auto const gate = synthesize_gate_oracle( m );
  for ( unsigned g : { 1u, 2u, 3u } )
  {
    auto const ps = register_probabilities( run_grover( sem, g ), 5 );
    auto const pg = register_probabilities( run_grover( gate, g ), 5 );
    for ( std::size_t i = 0; i < 32; ++i )
      EXPECT_NEAR( ps[i], pg[i], 1e-10 );
  }
}

TEST( grover, no_marks_stays_uniform )
{
  auto const o = phase_oracle::from_marked( 4, {} );
  for ( unsigned g = 0; g < 10; ++g )
    for ( auto p : probabilities( run_grover( o, g ) ) )
      EXPECT_NEAR( p, 1.0 / 16, 1e-9 );
}

TEST( grover, two_qubit_single_mark_is_certain )
{
  auto const p = probabilities( run_grover( phase_oracle::from_marked( 2, { 1 } ), 1 ) );
  EXPECT_NEAR( p[1], 1.0, 1e-12 );
}

TEST( grover, formula_agrees_with_simulation )
{
  for ( std::uint64_t N : { 4u, 8u, 16u, 32u, 64u } )
  {
    auto const n = static_cast<unsigned>( std::log2( N ) );
    for ( std::uint64_t c = 0; c <= N; ++c )
    {
      auto const marked = spread_marked( N, c, N + c );
      auto const o = phase_oracle::from_marked( n, marked );
      auto s = run_grover( o, 0 );
      auto const qs = register_qubits( n );
      for ( unsigned g = 0; g <= 12; ++g )
      {
        if ( g > 0 )
        {
          o.apply( s );
          apply_diffusion( s, qs );
        }
        auto const p = probabilities( s );
        double total = 0.0;
        for ( auto m : marked )
          total += p[m];
        ASSERT_NEAR( total, success_probability( g, c, N ), 1e-9 ) << "N=" << N << " c=" << c << " g=" << g;
      }
    }
  }
}

TEST( grover, probabilities_uniform_within_groups )
{
  auto const marked = spread_marked( 64, 9, 1 );
  auto const o = phase_oracle::from_marked( 6, marked );
  for ( unsigned g = 0; g <= 8; ++g )
  {
    auto const p = probabilities( run_grover( o, g ) );
    double const pm = p[marked.front()];
    double pu = -1.0;
    for ( std::uint64_t x = 0; x < 64; ++x )
    {
      if ( o.table()[x] )
      {
        EXPECT_NEAR( p[x], pm, 1e-10 );
      }
      else
      {
        if ( pu < 0 )
          pu = p[x];
        EXPECT_NEAR( p[x], pu, 1e-10 );
      }
    }
  }
}

TEST( grover, success_probability_values )
{
  EXPECT_NEAR( success_probability( 5, 1, 64 ), 0.963515481619211, 1e-12 );
  EXPECT_NEAR( success_probability( 5, 15, 64 ), 0.438974069152422, 1e-12 );
  EXPECT_NEAR( success_probability( 1, 1, 4 ), 1.0, 1e-15 );
  EXPECT_NEAR( success_probability( 1, 4, 32 ), 0.78125, 1e-15 );
  for ( std::uint64_t g = 0; g < 20; ++g )
  {
    EXPECT_NEAR( success_probability( g, 32, 64 ), 0.5, 1e-12 );
    EXPECT_EQ( success_probability( g, 0, 64 ), 0.0 );
  }
  EXPECT_THROW( success_probability( 1, 65, 64 ), config_error );
}

TEST( grover, theory_record )
{
  auto const t = grover_theory::make( 32, 4, 3 );
  EXPECT_NEAR( t.theta, std::asin( std::sqrt( 4.0 / 32.0 ) ), 1e-12 );
  EXPECT_NEAR( t.success_probability(), 4 * 0.08251953125, 1e-12 );
  EXPECT_NEAR( grover_theory::make( 4, 4, 0 ).theta, std::numbers::pi / 2, 1e-12 );
}

TEST( grover, initial_iterations )
{
  EXPECT_EQ( initial_iterations( 2 ), 1u );
  EXPECT_EQ( initial_iterations( 4 ), 1u );
  EXPECT_EQ( initial_iterations( 64 ), 5u );
  EXPECT_EQ( initial_iterations( 128 ), 8u );
  EXPECT_EQ( initial_iterations( 256 ), 12u );
  EXPECT_EQ( initial_iterations( 512 ), 17u );
  // accumulated sums of a full descent
  std::uint64_t const expected[] = { 15, 36, 78, 153 };
  for ( unsigned n = 6; n <= 9; ++n )
  {
    auto const g0 = initial_iterations( std::uint64_t{ 1 } << n );
    EXPECT_EQ( g0 * ( g0 + 1 ) / 2, expected[n - 6] );
  }
  EXPECT_THROW( initial_iterations( 1 ), config_error );
}

TEST( grover, initial_iterations_near_single_mark_optimum )
{
  // brute force: the floor lands on the optimum or one below it
  for ( std::uint64_t N : { 8u, 16u, 64u, 128u, 256u, 512u, 1024u } )
  {
    std::uint64_t best = 0;
    for ( std::uint64_t g = 1; g < N; ++g )
    {
      if ( success_probability( g, 1, N ) > success_probability( best, 1, N ) )
        best = g;
      if ( success_probability( g, 1, N ) < success_probability( g - 1, 1, N ) )
        break;
    }
    auto const g0 = initial_iterations( N );
    EXPECT_TRUE( g0 == best || g0 + 1 == best ) << N << ": g0 " << g0 << " best " << best;
  }
}
