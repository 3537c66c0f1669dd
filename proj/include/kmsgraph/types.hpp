#pragma once

#include <stdexcept>
#include <string>

namespace kmsgraph {

/** Error category, mapped to process exit codes by the CLI. */
class Error : public std::runtime_error {
public:
  enum class Kind {
    InvalidInput,   // malformed graph, unknown id, bad argument
    NotApplicable,  // requested quantity does not exist (no critical beta, not summable, ...)
    Numerical,      // iteration failed to converge or residual too large
    Limit,          // configured size/enumeration cap exceeded
  };

  Error(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

/**
 * Numerical tolerances, centralized so every module agrees on what
 * "equal", "harmonic" and "critical" mean.
 */
struct Tolerances {
  double eig = 1e-12;             // spectral radius and root-finding accuracy
  double harmonicity = 1e-10;     // residual bound for (sub)harmonicity checks
  double classification = 1e-9;   // equality margin for classification decisions
  double simplex = 1e-8;          // reconstruction residual for decompositions
  double weight_zero = 1e-12;     // cycle weights are finite sums of edge weights
  int power_iteration_cap = 100000;
  int series_cap = 100000;
};

/** Size caps; enumeration beyond these raises Error::Kind::Limit. */
struct Limits {
  int max_vertices = 64;
  long max_simple_cycles = 100000;
};

}  // namespace kmsgraph
