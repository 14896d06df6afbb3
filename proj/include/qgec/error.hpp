#pragma once

#include <stdexcept>
#include <string>

namespace qgec
{

/// Base class of every exception thrown by the library.
class error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A resource bound (qubit budget, brute-force input limit) would be exceeded.
class limit_error : public error
{
public:
  using error::error;
};

/// Two objects that must agree in shape do not (input widths, output counts).
class arity_error : public error
{
public:
  using error::error;
};

/// Invalid user-supplied configuration value.
class config_error : public error
{
public:
  using error::error;
};

} // namespace qgec
