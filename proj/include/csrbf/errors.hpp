#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace csrbf {

/// Argument outside an operation's mathematical domain (bad family exponent,
/// nonpositive support or shift, unsupported Taylor family).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed user input: duplicate landmarks, degenerate regions,
/// out-of-bounds landmarks, mismatched sizes.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Text input that failed to parse. `line()` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Interpolation matrix is not numerically positive definite.
class ConditioningError : public std::runtime_error {
 public:
  ConditioningError(const std::string& what, std::size_t pivot)
      : std::runtime_error(what), pivot_(pivot) {}

  /// 0-based index of the landmark whose pivot failed.
  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

/// Closed-form rhombus solution hit a vanishing denominator.
class SingularConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace csrbf
