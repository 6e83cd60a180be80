#pragma once

#include <stdexcept>
#include <string>

namespace compacton {

/// Violated precondition on a mathematical input (exponents, orders, supports).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A field or function produced a NaN/Inf where finite values are required.
class NonFiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or schema-violating run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace compacton
