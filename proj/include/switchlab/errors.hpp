#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace switchlab {

/// Malformed input to an operation (empty sequences, points outside a ball, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A strategy was asked to run on a game it does not support (wrong n, K, norm).
class UnsupportedConfig : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Scalar closed form evaluated outside its domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The action sequence used K or more switches. Finite stand-in for the
/// infinite penalty on infeasible plays.
class BudgetViolation : public std::runtime_error {
 public:
  BudgetViolation(std::int64_t round, std::int64_t switches, std::int64_t budget)
      : std::runtime_error("switch budget violated at round " + std::to_string(round) + ": " +
                           std::to_string(switches) + " switches with budget K=" +
                           std::to_string(budget)),
        round_(round) {}

  /// 1-based round index of the offending switch (0 when not attributable).
  std::int64_t round() const noexcept { return round_; }

 private:
  std::int64_t round_;
};

/// Root bracketing or closed-form agreement failed.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The discretized operator lost the monotone structure it relies on; usually
/// means the grid is too coarse.
class NumericStructureError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// A strategy was constructed without the solved data it needs.
class DependencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested table would not fit the configured memory budget.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace switchlab
