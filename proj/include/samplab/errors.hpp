#pragma once

#include <stdexcept>
#include <string>

namespace samplab {

// Bad argument values (dimension mismatch, out-of-range parameters).
struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Precondition on the state space violated (e.g. point outside the support).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// A rejection loop exceeded its attempt cap.
struct EfficiencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A built object violates its own invariants (row sums, detailed balance).
struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical breakdown (vanishing mass, eigensolver failure).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid experiment configuration file.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace samplab
