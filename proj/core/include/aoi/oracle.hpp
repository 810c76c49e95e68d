#pragma once

#include <array>
#include <string>
#include <vector>

#include "aoi/distribution.hpp"
#include "aoi/mdp.hpp"
#include "aoi/policy.hpp"

namespace aoi {

/// Explicit transition operator of the AoI chain under a fixed policy on
/// [1, N]^2, components saturating at N. Each state has exactly two
/// successors (success / failure of the scheduled agent).
struct TransitionOperator {
  int n_trunc = 0;
  NetworkParams params{1.0, 1.0};
  std::string policy_id;
  /// rows[index] with index = (y - 1) * N + (x - 1).
  std::vector<std::array<Branch, 2>> rows;

  int index(State s) const noexcept { return (s.y - 1) * n_trunc + (s.x - 1); }

  /// out = in * P (one step of the distribution); out is resized as needed.
  void apply(const std::vector<double>& in, std::vector<double>& out) const;
};

/// Throws ValidationError if n_trunc < 4.
TransitionOperator build_operator(const Policy& policy, const NetworkParams& params, int n_trunc);

/// Stationary law by power iteration from the uniform distribution, stopping
/// when successive iterates differ by <= tol in max-norm. A period-2
/// oscillation, or exhausting max_iter, restarts the iteration on the lazy
/// chain (P + I) / 2, which has the same fixed point.
/// Throws ConvergenceError if the lazy chain also fails.
Distribution stationary(const TransitionOperator& op, double tol = 1e-13, int max_iter = 200000);

/// Long-run average of x + y under the truncated chain.
double average_cost(const Distribution& stationary_law);

}  // namespace aoi
