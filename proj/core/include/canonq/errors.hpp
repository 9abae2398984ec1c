#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace canonq {

/// Operands live in spaces of different dimension (degrees of freedom,
/// operator positions, matrix sizes, point lengths).
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A quantisation map was applied outside the subalgebra it is defined on.
class DomainViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exact division by i*hbar was requested for an operator that has a
/// component of order hbar^0.
class NotDivisible : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The sampler could not locate any point on a constraint surface.
class NoPointsFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error(message + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace canonq
