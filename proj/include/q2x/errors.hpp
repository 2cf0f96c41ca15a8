#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace q2x {

/// Argument outside the mathematical domain of an operation (zero radius,
/// coincident points, divergent series regime, zero reference value).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Degenerate or malformed element geometry.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation point on (or numerically on) the support of an element, where the
/// closed-form potentials are singular.
class SingularInputError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Kernel kind does not match the element kind.
class IncompatibleKindError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace q2x
