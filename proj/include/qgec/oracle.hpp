#pragma once

#include "miter.hpp"
#include "qsim.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace qgec
{

enum class oracle_backend
{
  semantic,
  gate
};

inline std::string_view to_string( oracle_backend b )
{
  return b == oracle_backend::semantic ? "semantic" : "gate";
}

/// Basis indices on which the miter evaluates to 1.
struct marked_set
{
  std::vector<std::uint64_t> assignments;

  std::uint64_t count() const { return assignments.size(); }
};

inline marked_set compute_marked_set( miter_instance const& m, unsigned limit = default_brute_force_limit )
{
  marked_set s;
  for ( auto const& a : enumerate_counterexamples( m, limit ) )
    s.assignments.push_back( a.value() );
  return s;
}

/*! \brief Phase oracle that negates the amplitudes of marked input patterns.
 *
 * The semantic backend negates amplitudes directly from a truth table of the
 * predicate over the input register; it acts on the leading `n_inputs`
 * qubits of whatever state it is applied to.
 *
 * The gate backend is a reversible program over `n_inputs + ancillas` qubits.
 * Ancilla k (qubit n_inputs + k) holds gate k of the combined miter netlist.
 * The program computes every gate into its ancilla, applies Z to the ancilla
 * of the miter output and uncomputes in reverse order.
 */
class phase_oracle
{
public:
  static phase_oracle from_predicate( unsigned n_inputs, std::function<bool( std::uint64_t )> const& marked )
  {
    if ( n_inputs < 1 || n_inputs > default_max_qubits )
      throw limit_error( "semantic oracle over " + std::to_string( n_inputs ) + " inputs is out of range" );
    phase_oracle o( oracle_backend::semantic, n_inputs );
    auto const n = std::uint64_t{ 1 } << n_inputs;
    o.table_.resize( n );
    for ( std::uint64_t x = 0; x < n; ++x )
      o.table_[x] = marked( x ) ? 1 : 0;
    return o;
  }

  static phase_oracle from_marked( unsigned n_inputs, std::vector<std::uint64_t> const& marked )
  {
    auto o = from_predicate( n_inputs, []( std::uint64_t ) { return false; } );
    for ( auto x : marked )
    {
      if ( x >= o.table_.size() )
        throw error( "marked index " + std::to_string( x ) + " out of range" );
      o.table_[x] = 1;
    }
    return o;
  }

  static phase_oracle from_program( unsigned n_inputs, unsigned ancillas, std::vector<gate_op> program, std::vector<std::string> ancilla_signals,
                                    unsigned result_qubit )
  {
    phase_oracle o( oracle_backend::gate, n_inputs );
    o.ancillas_ = ancillas;
    o.program_ = std::move( program );
    o.ancilla_signals_ = std::move( ancilla_signals );
    o.result_qubit_ = result_qubit;
    return o;
  }

  oracle_backend backend() const { return backend_; }
  unsigned n_inputs() const { return n_inputs_; }
  unsigned ancillas() const { return ancillas_; }
  unsigned total_qubits() const { return n_inputs_ + ancillas_; }
  unsigned result_qubit() const { return result_qubit_; }
  std::vector<gate_op> const& program() const { return program_; }
  std::vector<std::string> const& ancilla_signals() const { return ancilla_signals_; }

  /// Truth table of the semantic backend (empty for the gate backend).
  std::vector<std::uint8_t> const& table() const { return table_; }

  void apply( quantum_state& state ) const
  {
    if ( backend_ == oracle_backend::semantic )
    {
      if ( state.num_qubits() < n_inputs_ )
        throw arity_error( "oracle over " + std::to_string( n_inputs_ ) + " inputs applied to a " + std::to_string( state.num_qubits() ) + "-qubit state" );
      auto const shift = state.num_qubits() - n_inputs_;
      auto amps = state.amplitudes();
      for ( std::size_t i = 0; i < amps.size(); ++i )
      {
        if ( table_[i >> shift] )
          amps[i] = -amps[i];
      }
      return;
    }
    if ( state.num_qubits() != total_qubits() )
      throw arity_error( "gate oracle needs " + std::to_string( total_qubits() ) + " qubits, state has " + std::to_string( state.num_qubits() ) );
    for ( auto const& op : program_ )
      apply_gate( state, op );
  }

  /// Text listing of the gate program, one operation per line.
  std::string dump() const
  {
    std::string s = "# " + std::string( to_string( backend_ ) ) + " oracle, " + std::to_string( n_inputs_ ) + " inputs";
    if ( backend_ == oracle_backend::semantic )
    {
      std::uint64_t c = 0;
      for ( auto v : table_ )
        c += v;
      return s + ", " + std::to_string( c ) + " marked\n";
    }
    s += ", " + std::to_string( ancillas_ ) + " ancillas, result qubit " + std::to_string( result_qubit_ ) + "\n";
    for ( unsigned k = 0; k < ancillas_; ++k )
      s += "# q" + std::to_string( n_inputs_ + k ) + " = " + ancilla_signals_[k] + "\n";
    for ( auto const& op : program_ )
      s += op.to_string() + "\n";
    return s;
  }

private:
  phase_oracle( oracle_backend backend, unsigned n_inputs ) : backend_( backend ), n_inputs_( n_inputs ) {}

  oracle_backend backend_;
  unsigned n_inputs_;
  unsigned ancillas_ = 0;
  unsigned result_qubit_ = 0;
  std::vector<std::uint8_t> table_;
  std::vector<gate_op> program_;
  std::vector<std::string> ancilla_signals_;
};

inline phase_oracle semantic_oracle( miter_instance const& m )
{
  std::vector<std::uint8_t> values;
  auto const out = m.combined.output_ids().front();
  return phase_oracle::from_predicate( m.n_inputs, [&]( std::uint64_t x ) {
    m.combined.evaluate_signals( x, values );
    return values[out] != 0;
  } );
}

namespace detail
{

inline void emit_mcx( std::vector<gate_op>& ops, std::vector<unsigned> controls, unsigned target )
{
  if ( controls.size() == 1 )
    ops.push_back( gate_op::cx( controls.front(), target ) );
  else
    ops.push_back( gate_op::mcx( std::move( controls ), target ) );
}

inline void emit_x_all( std::vector<gate_op>& ops, std::vector<unsigned> const& qubits )
{
  for ( auto q : qubits )
    ops.push_back( gate_op::x( q ) );
}

inline std::vector<unsigned> distinct( std::vector<unsigned> const& qs )
{
  std::vector<unsigned> out;
  for ( auto q : qs )
  {
    if ( std::find( out.begin(), out.end(), q ) == out.end() )
      out.push_back( q );
  }
  return out;
}

/*! \brief Reversible realization of `target ^= kind(operands)` for a target in |0>.
 *
 * | kind    | realization                                               |
 * |---------|-----------------------------------------------------------|
 * | AND     | MCX over the distinct operands                            |
 * | NAND    | AND, then X on the target                                 |
 * | OR      | X on operands, MCX, X on operands, X on target            |
 * | NOR     | OR without the final X                                    |
 * | XOR     | one CX per operand                                        |
 * | XNOR    | XOR, then X on the target                                 |
 * | BUF     | CX                                                        |
 * | NOT     | CX, then X on the target                                  |
 * | ONEHOT  | one MCX per singly-occurring operand v, with every other  |
 * |         | distinct operand as a negative (X-conjugated) control;    |
 * |         | the terms are mutually exclusive so XOR-ing them is exact |
 */
inline void emit_gate( std::vector<gate_op>& ops, gate_kind kind, std::vector<unsigned> const& operands, unsigned target )
{
  switch ( kind )
  {
  case gate_kind::and_:
  case gate_kind::nand:
    emit_mcx( ops, distinct( operands ), target );
    if ( kind == gate_kind::nand )
      ops.push_back( gate_op::x( target ) );
    break;
  case gate_kind::or_:
  case gate_kind::nor:
  {
    auto const cs = distinct( operands );
    emit_x_all( ops, cs );
    emit_mcx( ops, cs, target );
    emit_x_all( ops, cs );
    if ( kind == gate_kind::or_ )
      ops.push_back( gate_op::x( target ) );
    break;
  }
  case gate_kind::xor_:
  case gate_kind::xnor:
    for ( auto q : operands )
      ops.push_back( gate_op::cx( q, target ) );
    if ( kind == gate_kind::xnor )
      ops.push_back( gate_op::x( target ) );
    break;
  case gate_kind::buf:
  case gate_kind::not_:
    ops.push_back( gate_op::cx( operands.front(), target ) );
    if ( kind == gate_kind::not_ )
      ops.push_back( gate_op::x( target ) );
    break;
  case gate_kind::onehot:
  {
    auto const cs = distinct( operands );
    for ( auto v : cs )
    {
      if ( std::count( operands.begin(), operands.end(), v ) != 1 )
        continue;
      std::vector<unsigned> others;
      for ( auto o : cs )
      {
        if ( o != v )
          others.push_back( o );
      }
      emit_x_all( ops, others );
      emit_mcx( ops, cs, target );
      emit_x_all( ops, others );
    }
    break;
  }
  }
}

} // namespace detail

/*! \brief Compute / phase / uncompute synthesis of the miter indicator.
 *
 * Uses one ancilla per gate of the combined netlist without reuse. Throws
 * `limit_error` when inputs plus ancillas exceed `max_qubits`.
 */
inline phase_oracle synthesize_gate_oracle( miter_instance const& m, unsigned max_qubits = default_max_qubits )
{
  auto const& c = m.combined;
  auto const n = m.n_inputs;
  auto const ancillas = static_cast<unsigned>( c.gates().size() );
  if ( n + ancillas > max_qubits )
    throw limit_error( "gate oracle needs " + std::to_string( n ) + " input + " + std::to_string( ancillas ) + " ancilla qubits, budget is " +
                       std::to_string( max_qubits ) );

  std::vector<gate_op> compute;
  std::vector<std::string> names;
  for ( unsigned g = 0; g < ancillas; ++g )
  {
    std::vector<unsigned> operands;
    for ( auto id : c.operand_ids( g ) )
      operands.push_back( static_cast<unsigned>( id ) );
    detail::emit_gate( compute, c.gates()[g].kind, operands, n + g );
    names.push_back( c.gates()[g].out );
  }

  auto const result = static_cast<unsigned>( c.output_ids().front() );
  std::vector<gate_op> program = compute;
  program.push_back( gate_op::z( result ) );
  // every emitted operation is self-inverse
  program.insert( program.end(), compute.rbegin(), compute.rend() );
  return phase_oracle::from_program( n, ancillas, std::move( program ), std::move( names ), result );
}

inline phase_oracle make_oracle( miter_instance const& m, oracle_backend backend, unsigned max_qubits = default_max_qubits )
{
  return backend == oracle_backend::semantic ? semantic_oracle( m ) : synthesize_gate_oracle( m, max_qubits );
}

} // namespace qgec
