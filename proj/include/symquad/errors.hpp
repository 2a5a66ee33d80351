#pragma once

#include <stdexcept>
#include <string>

namespace symquad {

/// Argument outside the mathematical domain of an operation (alpha <= 1, tol <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operands of different dimension were combined.
class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(std::size_t expected, std::size_t actual)
      : std::invalid_argument("dimension mismatch: expected " + std::to_string(expected) +
                              ", got " + std::to_string(actual)) {}
};

/// Exact integer arithmetic would overflow.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// A configurable size cap (node count, dimension, enumeration length) was exceeded.
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Malformed or invariant-violating input data.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Feature outside the supported scope (e.g. fooling construction for several groups).
class Unsupported : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The lower-bound theorem does not apply: the rule has at least N* nodes.
class Refusal : public std::runtime_error {
 public:
  Refusal(const std::string& what, std::size_t nodes) : std::runtime_error(what), nodes_(nodes) {}
  std::size_t nodes() const noexcept { return nodes_; }

 private:
  std::size_t nodes_;
};

/// A numerical check failed; carries the offending residual.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace symquad
