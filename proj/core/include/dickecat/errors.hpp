#pragma once

#include <stdexcept>
#include <string>

namespace dickecat {

/// Arguments outside an operation's documented domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A requested size (basis, Fock cutoff, dense limit) exceeds its budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state that would have zero norm, e.g. a parity-forbidden herald outcome.
class DegenerateStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative solver stopped before meeting its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_residual, int iterations)
      : std::runtime_error(what), best_residual_(best_residual), iterations_(iterations) {}

  double best_residual() const noexcept { return best_residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double best_residual_;
  int iterations_;
};

/// Malformed serialized artifact (cache entry, JSON record).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Broken internal invariant; indicates a bug rather than bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace dickecat
