#pragma once

#include <stdexcept>
#include <string>

namespace stripshear {

/// Input violates a documented precondition or invariant.
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of a formula (e.g. theta_Y <= 1).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Iterative solver did not reach its tolerance. Carries the last residual.
class SolverError : public std::runtime_error {
public:
  SolverError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

}  // namespace stripshear
