#pragma once

#include "aoi/distribution.hpp"
#include "aoi/policy.hpp"
#include "aoi/state.hpp"

namespace aoi {

struct SolverConfig {
  /// Grid size: states (x, y) in [1, y_hat]^2 are evaluated. Must be >= 4.
  int y_hat = 1024;
  /// Reporting threshold for the tail-mass estimate; does not change the result.
  double tail_tolerance = 1e-12;
};

/// Product of the failure probabilities met along the diagonal from the
/// root of `s` up to `s`. 1 for root states (min(x, y) == 1).
double diagonal_attenuation(const Policy& policy, const NetworkParams& params, State s);

/// Fill the diagonal root + k(1, 1), k >= 1, inside the grid: each state is
/// its predecessor times the failure probability of the agent chosen there.
/// `root` must have a component equal to 1 and its value already set.
void propagate_diagonal(Grid& grid, State root, const Policy& policy, const NetworkParams& params);

/// Exact stationary distribution of a causal policy on [1, y_hat]^2.
///
/// Roots on the y-axis come from a first-order recursion in y whose
/// correction terms depend on how the switching boundary x'(y) moves;
/// every interior state follows from its root by diagonal attenuation;
/// roots on the x-axis follow from column sums. The grid is then scaled
/// to sum to one.
///
/// Agents are internally relabeled so that p >= q. Throws SolverError for
/// non-causal matrices, rows where agent 1 is never scheduled, switching
/// boundaries above x'(y) = y + 1, or a grid too small for the x-axis pass.
Distribution solve(const Policy& policy, const NetworkParams& params, const SolverConfig& config = {});

/// MaxWeight only: same contract as solve(), with x'(y) from the ceiling
/// formula and the two-case root recursion.
Distribution solve_mw_closed_form(const NetworkParams& params, const SolverConfig& config = {});

/// floor((q/p) * y_hat) + 1 for p >= q (agents oriented), capped at y_hat.
int x_axis_extent(const NetworkParams& oriented, int y_hat);

/// Estimated upper bound on the probability outside the grid: geometric
/// continuation of every diagonal that leaves the grid, plus an
/// extrapolation of the root sequences past the last evaluated root.
/// Returns +inf when the root sequences do not decay.
double tail_mass_bound(const Distribution& dist);

/// max_m |f(1, km+1) - (1-p) f(1, km) - p (1-q)^(m-1) f(1, (k-1)m+1)| for
/// k = p/q, over every m with 2 <= km and km + 1 <= y_hat. Holds for
/// MaxWeight with ties resolved towards agent 1.
/// Throws ValidationError unless p/q is within 1e-9 of a positive integer.
double pantograph_residual(const Distribution& dist);

}  // namespace aoi
