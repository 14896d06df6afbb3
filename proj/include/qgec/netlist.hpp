#pragma once

#include "error.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qgec
{

/*! \brief Primitive combinational gate kinds.
 *
 * `xor_` with n operands is parity. `onehot` is 1 iff exactly one operand is 1;
 * for two operands both coincide, for three they differ only on the all-ones
 * pattern.
 */
enum class gate_kind
{
  and_,
  or_,
  xor_,
  xnor,
  nand,
  nor,
  not_,
  buf,
  onehot
};

inline std::string_view to_string( gate_kind kind )
{
  switch ( kind )
  {
  case gate_kind::and_: return "AND";
  case gate_kind::or_: return "OR";
  case gate_kind::xor_: return "XOR";
  case gate_kind::xnor: return "XNOR";
  case gate_kind::nand: return "NAND";
  case gate_kind::nor: return "NOR";
  case gate_kind::not_: return "NOT";
  case gate_kind::buf: return "BUF";
  case gate_kind::onehot: return "ONEHOT";
  }
  return "?";
}

inline std::optional<gate_kind> gate_kind_from_string( std::string_view text )
{
  static constexpr gate_kind all[] = { gate_kind::and_, gate_kind::or_, gate_kind::xor_,
                                       gate_kind::xnor, gate_kind::nand, gate_kind::nor,
                                       gate_kind::not_, gate_kind::buf, gate_kind::onehot };
  for ( auto k : all )
  {
    if ( to_string( k ) == text )
      return k;
  }
  return std::nullopt;
}

inline bool is_unary( gate_kind kind )
{
  return kind == gate_kind::not_ || kind == gate_kind::buf;
}

/// Boolean function of a gate kind over the given operand values.
template<class Range>
bool evaluate_gate( gate_kind kind, Range const& operands )
{
  std::size_t ones = 0;
  std::size_t total = 0;
  for ( auto v : operands )
  {
    ones += v ? 1u : 0u;
    ++total;
  }
  switch ( kind )
  {
  case gate_kind::and_: return ones == total;
  case gate_kind::nand: return ones != total;
  case gate_kind::or_: return ones > 0;
  case gate_kind::nor: return ones == 0;
  case gate_kind::xor_: return ( ones & 1u ) != 0;
  case gate_kind::xnor: return ( ones & 1u ) == 0;
  case gate_kind::not_: return ones == 0;
  case gate_kind::buf: return ones == 1;
  case gate_kind::onehot: return ones == 1;
  }
  return false;
}

struct gate
{
  std::string out;
  gate_kind kind;
  std::vector<std::string> operands;

  bool operator==( gate const& ) const = default;
};

/*! \brief Fixed-width input assignment.
 *
 * Bit i of the assignment is the value of input i. Input 0 is the most
 * significant bit of the numeric value, so "11011" has value 27 and sets
 * inputs 0, 1, 3 and 4.
 */
class assignment
{
public:
  static constexpr unsigned max_width = 63;

  assignment() = default;

  assignment( unsigned width, std::uint64_t value ) : width_( width ), value_( value )
  {
    if ( width > max_width )
      throw limit_error( "assignment width " + std::to_string( width ) + " exceeds " + std::to_string( max_width ) );
    if ( width < 64 && ( value >> width ) != 0 )
      throw arity_error( "assignment value " + std::to_string( value ) + " does not fit in " + std::to_string( width ) + " bits" );
  }

  static assignment from_string( std::string_view bits )
  {
    std::uint64_t value = 0;
    for ( char ch : bits )
    {
      if ( ch != '0' && ch != '1' )
        throw error( "invalid assignment character '" + std::string( 1, ch ) + "' in \"" + std::string( bits ) + "\"" );
      value = ( value << 1 ) | static_cast<std::uint64_t>( ch == '1' );
    }
    return assignment( static_cast<unsigned>( bits.size() ), value );
  }

  unsigned width() const { return width_; }
  std::uint64_t value() const { return value_; }

  bool bit( unsigned input ) const
  {
    return ( ( value_ >> ( width_ - 1u - input ) ) & 1u ) != 0;
  }

  std::string to_string() const
  {
    std::string s( width_, '0' );
    for ( unsigned i = 0; i < width_; ++i )
      s[i] = bit( i ) ? '1' : '0';
    return s;
  }

  auto operator<=>( assignment const& ) const = default;

private:
  unsigned width_ = 0;
  std::uint64_t value_ = 0;
};

/// One value per circuit output, in declared output order.
using output_bits = std::vector<std::uint8_t>;

enum class netlist_error_kind
{
  syntax,
  undefined_signal,
  duplicate_signal,
  cyclic_definition,
  arity
};

inline std::string_view to_string( netlist_error_kind kind )
{
  switch ( kind )
  {
  case netlist_error_kind::syntax: return "syntax error";
  case netlist_error_kind::undefined_signal: return "undefined signal";
  case netlist_error_kind::duplicate_signal: return "duplicate signal";
  case netlist_error_kind::cyclic_definition: return "cyclic definition";
  case netlist_error_kind::arity: return "arity violation";
  }
  return "?";
}

/// Netlist validation or parse failure. `line`/`column` are 1-based, 0 when unknown.
class netlist_error : public error
{
public:
  netlist_error( netlist_error_kind kind, std::string name, std::string const& detail, std::size_t line = 0, std::size_t column = 0 )
      : error( compose( kind, name, detail, line, column ) ), kind_( kind ), name_( std::move( name ) ), line_( line ), column_( column )
  {
  }

  netlist_error_kind kind() const { return kind_; }
  std::string const& name() const { return name_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  static std::string compose( netlist_error_kind kind, std::string const& name, std::string const& detail, std::size_t line, std::size_t column )
  {
    std::ostringstream os;
    if ( line > 0 )
      os << line << ":" << column << ": ";
    os << to_string( kind );
    if ( !name.empty() )
      os << " '" << name << "'";
    if ( !detail.empty() )
      os << ": " << detail;
    return os.str();
  }

  netlist_error_kind kind_;
  std::string name_;
  std::size_t line_;
  std::size_t column_;
};

inline bool is_valid_signal_name( std::string_view name )
{
  if ( name.empty() )
    return false;
  auto alpha = []( char c ) { return ( c >= 'a' && c <= 'z' ) || ( c >= 'A' && c <= 'Z' ) || c == '_'; };
  auto digit = []( char c ) { return c >= '0' && c <= '9'; };
  if ( !alpha( name.front() ) )
    return false;
  return std::all_of( name.begin() + 1, name.end(), [&]( char c ) { return alpha( c ) || digit( c ); } );
}

/*! \brief Validated, immutable combinational gate-level netlist.
 *
 * Signals are numbered inputs first (0..n-1), then gates in declaration
 * order. Every gate operand refers to a signal with a smaller number, so the
 * declaration order is a topological order.
 */
class circuit
{
public:
  circuit( std::string name, std::vector<std::string> inputs, std::vector<gate> gates, std::vector<std::string> outputs )
      : name_( std::move( name ) ), inputs_( std::move( inputs ) ), gates_( std::move( gates ) ), outputs_( std::move( outputs ) )
  {
    resolve();
  }

  std::string const& name() const { return name_; }
  std::vector<std::string> const& inputs() const { return inputs_; }
  std::vector<gate> const& gates() const { return gates_; }
  std::vector<std::string> const& outputs() const { return outputs_; }

  std::size_t num_inputs() const { return inputs_.size(); }
  std::size_t num_outputs() const { return outputs_.size(); }
  std::size_t num_signals() const { return inputs_.size() + gates_.size(); }

  /// Signal numbers of the operands of gate `i`.
  std::vector<std::size_t> const& operand_ids( std::size_t i ) const { return operand_ids_[i]; }
  std::vector<std::size_t> const& output_ids() const { return output_ids_; }

  std::size_t signal_id( std::string const& name ) const
  {
    auto it = ids_.find( name );
    if ( it == ids_.end() )
      throw netlist_error( netlist_error_kind::undefined_signal, name, "" );
    return it->second;
  }

  std::string const& signal_name( std::size_t id ) const
  {
    return id < inputs_.size() ? inputs_[id] : gates_[id - inputs_.size()].out;
  }

  /// Evaluates every signal for the input pattern whose numeric value is `x`.
  void evaluate_signals( std::uint64_t x, std::vector<std::uint8_t>& values ) const
  {
    auto const n = inputs_.size();
    values.resize( num_signals() );
    for ( std::size_t i = 0; i < n; ++i )
      values[i] = static_cast<std::uint8_t>( ( x >> ( n - 1 - i ) ) & 1u );
    std::vector<std::uint8_t> ops;
    for ( std::size_t g = 0; g < gates_.size(); ++g )
    {
      ops.clear();
      for ( auto id : operand_ids_[g] )
        ops.push_back( values[id] );
      values[n + g] = evaluate_gate( gates_[g].kind, ops ) ? 1 : 0;
    }
  }

  /// Structural equality; the name is metadata and is not compared.
  bool operator==( circuit const& other ) const
  {
    return inputs_ == other.inputs_ && gates_ == other.gates_ && outputs_ == other.outputs_;
  }

private:
  void resolve()
  {
    if ( inputs_.empty() )
      throw netlist_error( netlist_error_kind::syntax, "", "circuit has no inputs" );
    if ( outputs_.empty() )
      throw netlist_error( netlist_error_kind::syntax, "", "circuit has no outputs" );
    if ( inputs_.size() > assignment::max_width )
      throw limit_error( "circuit has " + std::to_string( inputs_.size() ) + " inputs, at most " + std::to_string( assignment::max_width ) + " are supported" );

    auto define = [this]( std::string const& name ) {
      if ( !is_valid_signal_name( name ) )
        throw netlist_error( netlist_error_kind::syntax, name, "invalid signal name" );
      auto const id = ids_.size();
      if ( !ids_.emplace( name, id ).second )
        throw netlist_error( netlist_error_kind::duplicate_signal, name, "" );
    };

    for ( auto const& in : inputs_ )
      define( in );

    operand_ids_.reserve( gates_.size() );
    for ( auto const& g : gates_ )
    {
      if ( is_unary( g.kind ) ? g.operands.size() != 1 : g.operands.size() < 2 )
        throw netlist_error( netlist_error_kind::arity, g.out,
                             std::string( to_string( g.kind ) ) + " takes " + ( is_unary( g.kind ) ? "exactly 1 operand" : "at least 2 operands" ) +
                                 ", got " + std::to_string( g.operands.size() ) );
      std::vector<std::size_t> ids;
      for ( auto const& op : g.operands )
      {
        if ( op == g.out )
          throw netlist_error( netlist_error_kind::cyclic_definition, g.out, "gate uses its own output" );
        auto it = ids_.find( op );
        if ( it == ids_.end() )
          throw netlist_error( netlist_error_kind::undefined_signal, op, "operand of gate '" + g.out + "' is not defined before use" );
        ids.push_back( it->second );
      }
      define( g.out );
      operand_ids_.push_back( std::move( ids ) );
    }

    for ( auto const& out : outputs_ )
    {
      auto it = ids_.find( out );
      if ( it == ids_.end() )
        throw netlist_error( netlist_error_kind::undefined_signal, out, "output is not defined" );
      output_ids_.push_back( it->second );
    }
  }

  std::string name_;
  std::vector<std::string> inputs_;
  std::vector<gate> gates_;
  std::vector<std::string> outputs_;

  std::unordered_map<std::string, std::size_t> ids_;
  std::vector<std::vector<std::size_t>> operand_ids_;
  std::vector<std::size_t> output_ids_;
};

/// Output values of `c` for the input pattern with numeric value `x`.
inline output_bits evaluate( circuit const& c, std::uint64_t x )
{
  std::vector<std::uint8_t> values;
  c.evaluate_signals( x, values );
  output_bits out;
  out.reserve( c.num_outputs() );
  for ( auto id : c.output_ids() )
    out.push_back( values[id] );
  return out;
}

inline output_bits evaluate( circuit const& c, assignment const& x )
{
  if ( x.width() != c.num_inputs() )
    throw arity_error( "assignment width " + std::to_string( x.width() ) + " does not match " + std::to_string( c.num_inputs() ) +
                       " circuit inputs" );
  return evaluate( c, x.value() );
}

namespace detail
{

struct token
{
  std::string_view text;
  std::size_t column; // 1-based
};

inline std::vector<token> tokenize_line( std::string_view line )
{
  std::vector<token> tokens;
  if ( auto hash = line.find( '#' ); hash != std::string_view::npos )
    line = line.substr( 0, hash );
  std::size_t i = 0;
  while ( i < line.size() )
  {
    while ( i < line.size() && ( line[i] == ' ' || line[i] == '\t' || line[i] == '\r' ) )
      ++i;
    if ( i >= line.size() )
      break;
    auto const start = i;
    if ( line[i] == '=' )
    {
      ++i;
    }
    else
    {
      while ( i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '=' )
        ++i;
    }
    tokens.push_back( { line.substr( start, i - start ), start + 1 } );
  }
  return tokens;
}

struct parsed_gate
{
  gate g;
  std::size_t line;
  std::size_t column;
  std::vector<std::size_t> operand_columns;
};

} // namespace detail

/*! \brief Parses the line-oriented netlist format.
 *
 * \verbatim
   # comment
   inputs a b c
   gate g1 = AND a b
   gate g2 = XOR g1 c
   outputs g2 g1
   \endverbatim
 *
 * `inputs` must be the first statement and `outputs` the last. Operands must
 * be defined on an earlier line.
 */
inline circuit parse_circuit( std::string_view text, std::string name = {} )
{
  using detail::token;
  using k = netlist_error_kind;

  std::vector<std::string> inputs;
  std::vector<detail::parsed_gate> gates;
  std::vector<std::string> outputs;
  std::vector<std::pair<std::size_t, std::size_t>> output_pos;
  bool have_inputs = false;
  bool have_outputs = false;
  std::size_t input_line = 0;
  std::size_t line_no = 0;

  auto check_name = [&]( token const& t ) {
    if ( !is_valid_signal_name( t.text ) )
      throw netlist_error( k::syntax, std::string( t.text ), "invalid signal name", line_no, t.column );
  };

  std::size_t pos = 0;
  while ( pos <= text.size() )
  {
    auto const eol = text.find( '\n', pos );
    auto const line = text.substr( pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos );
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    auto const tokens = detail::tokenize_line( line );
    if ( tokens.empty() )
      continue;

    auto const& head = tokens.front();
    if ( have_outputs )
      throw netlist_error( k::syntax, std::string( head.text ), "statement after 'outputs'", line_no, head.column );

    if ( head.text == "inputs" )
    {
      if ( have_inputs )
        throw netlist_error( k::syntax, "inputs", "declared twice", line_no, head.column );
      if ( tokens.size() < 2 )
        throw netlist_error( k::syntax, "inputs", "expected at least one name", line_no, head.column + head.text.size() );
      for ( std::size_t i = 1; i < tokens.size(); ++i )
      {
        check_name( tokens[i] );
        inputs.emplace_back( tokens[i].text );
      }
      have_inputs = true;
      input_line = line_no;
      continue;
    }

    if ( !have_inputs )
      throw netlist_error( k::syntax, std::string( head.text ), "expected 'inputs' as first statement", line_no, head.column );

    if ( head.text == "gate" )
    {
      if ( tokens.size() < 4 || tokens[2].text != "=" )
        throw netlist_error( k::syntax, "", "expected 'gate <name> = <KIND> <operand>+'", line_no,
                             tokens.size() > 2 ? tokens[2].column : head.column );
      check_name( tokens[1] );
      auto kind = gate_kind_from_string( tokens[3].text );
      if ( !kind )
        throw netlist_error( k::syntax, std::string( tokens[3].text ), "unknown gate kind", line_no, tokens[3].column );
      detail::parsed_gate pg{ { std::string( tokens[1].text ), *kind, {} }, line_no, tokens[1].column, {} };
      for ( std::size_t i = 4; i < tokens.size(); ++i )
      {
        check_name( tokens[i] );
        pg.g.operands.emplace_back( tokens[i].text );
        pg.operand_columns.push_back( tokens[i].column );
      }
      gates.push_back( std::move( pg ) );
      continue;
    }

    if ( head.text == "outputs" )
    {
      if ( tokens.size() < 2 )
        throw netlist_error( k::syntax, "outputs", "expected at least one name", line_no, head.column + head.text.size() );
      for ( std::size_t i = 1; i < tokens.size(); ++i )
      {
        check_name( tokens[i] );
        outputs.emplace_back( tokens[i].text );
        output_pos.emplace_back( line_no, tokens[i].column );
      }
      have_outputs = true;
      continue;
    }

    throw netlist_error( k::syntax, std::string( head.text ), "unknown statement", line_no, head.column );
  }

  if ( !have_inputs )
    throw netlist_error( k::syntax, "", "missing 'inputs' statement", line_no, 1 );
  if ( !have_outputs )
    throw netlist_error( k::syntax, "", "missing 'outputs' statement", line_no, 1 );

  // Name table over the whole file so that forward references can be told
  // apart from cycles and from plain undefined names.
  std::unordered_map<std::string, std::size_t> gate_index;
  {
    std::unordered_map<std::string, bool> seen_input;
    for ( auto const& in : inputs )
    {
      if ( !seen_input.emplace( in, true ).second )
        throw netlist_error( k::duplicate_signal, in, "", input_line, 0 );
    }
    for ( std::size_t i = 0; i < gates.size(); ++i )
    {
      auto const& pg = gates[i];
      if ( seen_input.count( pg.g.out ) || !gate_index.emplace( pg.g.out, i ).second )
        throw netlist_error( k::duplicate_signal, pg.g.out, "", pg.line, pg.column );
    }
  }

  for ( auto const& pg : gates )
  {
    auto const expected = is_unary( pg.g.kind ) ? "exactly 1 operand" : "at least 2 operands";
    if ( is_unary( pg.g.kind ) ? pg.g.operands.size() != 1 : pg.g.operands.size() < 2 )
      throw netlist_error( k::arity, pg.g.out,
                           std::string( to_string( pg.g.kind ) ) + " takes " + expected + ", got " + std::to_string( pg.g.operands.size() ),
                           pg.line, pg.column );
  }

  // Cycle detection over gate-to-gate edges (iterative DFS, white/grey/black).
  {
    std::vector<std::uint8_t> color( gates.size(), 0 );
    for ( std::size_t root = 0; root < gates.size(); ++root )
    {
      if ( color[root] != 0 )
        continue;
      std::vector<std::pair<std::size_t, std::size_t>> stack{ { root, 0 } };
      color[root] = 1;
      while ( !stack.empty() )
      {
        auto& [node, next] = stack.back();
        auto const& ops = gates[node].g.operands;
        if ( next == ops.size() )
        {
          color[node] = 2;
          stack.pop_back();
          continue;
        }
        auto const& op = ops[next++];
        auto it = gate_index.find( op );
        if ( it == gate_index.end() )
          continue;
        if ( color[it->second] == 1 )
        {
          auto const& pg = gates[node];
          auto const col = pg.operand_columns[next - 1];
          throw netlist_error( k::cyclic_definition, op, "reached again through gate '" + pg.g.out + "'", pg.line, col );
        }
        if ( color[it->second] == 0 )
        {
          color[it->second] = 1;
          stack.emplace_back( it->second, 0 );
        }
      }
    }
  }

  std::unordered_map<std::string, bool> defined;
  for ( auto const& in : inputs )
    defined.emplace( in, true );
  for ( auto const& pg : gates )
  {
    for ( std::size_t i = 0; i < pg.g.operands.size(); ++i )
    {
      auto const& op = pg.g.operands[i];
      if ( !defined.count( op ) )
        throw netlist_error( k::undefined_signal, op, gate_index.count( op ) ? "used before its definition" : "", pg.line, pg.operand_columns[i] );
    }
    defined.emplace( pg.g.out, true );
  }
  for ( std::size_t i = 0; i < outputs.size(); ++i )
  {
    if ( !defined.count( outputs[i] ) )
      throw netlist_error( k::undefined_signal, outputs[i], "", output_pos[i].first, output_pos[i].second );
  }

  std::vector<gate> plain;
  plain.reserve( gates.size() );
  for ( auto& pg : gates )
    plain.push_back( std::move( pg.g ) );
  return circuit( std::move( name ), std::move( inputs ), std::move( plain ), std::move( outputs ) );
}

/// Canonical text form (single spaces, no comments, no trailing newline).
inline std::string serialize_circuit( circuit const& c )
{
  std::string s = "inputs";
  for ( auto const& in : c.inputs() )
    s += " " + in;
  for ( auto const& g : c.gates() )
  {
    s += "\ngate " + g.out + " = ";
    s += to_string( g.kind );
    for ( auto const& op : g.operands )
      s += " " + op;
  }
  s += "\noutputs";
  for ( auto const& out : c.outputs() )
    s += " " + out;
  return s;
}

} // namespace qgec
