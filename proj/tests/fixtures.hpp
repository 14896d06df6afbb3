#pragma once

#include <qgec/netlist.hpp>

#include <string>

namespace qgec::test
{

inline constexpr char const* onehot_text = "inputs x0 x1 x2 x3 x4\n"
                                           "gate a1 = AND x0 x1\n"
                                           "gate h1 = ONEHOT x2 x3 x4\n"
                                           "gate a2 = AND a1 h1\n"
                                           "outputs a2 a1";

inline constexpr char const* or_text = "inputs x0 x1 x2 x3 x4\n"
                                       "gate b1 = AND x0 x1\n"
                                       "gate o1 = OR x2 x3 x4\n"
                                       "gate b2 = AND b1 o1\n"
                                       "outputs b2 b1";

inline constexpr char const* parity_text = "inputs x0 x1 x2 x3 x4\n"
                                           "gate a1 = AND x0 x1\n"
                                           "gate p1 = XOR x2 x3 x4\n"
                                           "gate a2 = AND a1 p1\n"
                                           "outputs a2 a1";

inline circuit onehot_circuit() { return parse_circuit( onehot_text, "onehot" ); }
inline circuit or_circuit() { return parse_circuit( or_text, "or" ); }
inline circuit parity_circuit() { return parse_circuit( parity_text, "parity" ); }
inline circuit passthrough() { return parse_circuit( "inputs a\noutputs a", "passthrough" ); }
inline circuit inverter() { return parse_circuit( "inputs a\ngate na = NOT a\noutputs na", "inverter" ); }

} // namespace qgec::test
