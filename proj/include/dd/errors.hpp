#pragma once

#include <stdexcept>
#include <string>

namespace dd {

// Bad user-supplied configuration (invalid order, malformed config file, ...).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Violated operation precondition (R <= 0, repeated indices, bad cut, ...).
struct DomainError : std::invalid_argument {
  explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

// State not a member of the configured sector.
struct MembershipError : std::invalid_argument {
  explicit MembershipError(const std::string& msg)
      : std::invalid_argument(msg) {}
};

// Requested object exceeds the configured memory budget.
struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical backend failure (eigensolver non-convergence, ...).
struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dd
