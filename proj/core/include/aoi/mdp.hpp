#pragma once

#include <array>
#include <vector>

#include "aoi/error.hpp"
#include "aoi/policy.hpp"
#include "aoi/state.hpp"

namespace aoi {

struct Branch {
  State to;
  double probability = 0.0;
};

/// Average-cost MDP over [1, N]^2 with AoI saturating at N. The per-slot
/// cost of a state is x + y.
class MdpModel {
 public:
  MdpModel(const NetworkParams& params, int n_trunc);

  int n_trunc() const noexcept { return n_; }
  const NetworkParams& params() const noexcept { return params_; }
  int num_states() const noexcept { return n_ * n_; }

  /// Row-major by y, matching DecisionMatrix storage.
  int index(State s) const noexcept { return (s.y - 1) * n_ + (s.x - 1); }
  State state(int index) const noexcept { return State{index % n_ + 1, index / n_ + 1}; }

  double cost(State s) const noexcept { return s.x + s.y; }

  /// {success branch, failure branch} of activating `a` in `s`.
  std::array<Branch, 2> transitions(State s, Agent a) const noexcept;

 private:
  State clamp(State s) const noexcept { return State{s.x < n_ ? s.x : n_, s.y < n_ ? s.y : n_}; }

  NetworkParams params_;
  int n_;
};

/// Throws ValidationError if n_trunc < 4.
MdpModel build_model(const NetworkParams& params, int n_trunc);

struct OptimalPolicy {
  Policy policy;  ///< tabular, N x N
  double gain = 0.0;  ///< long-run average of x + y on the truncated model
  int iterations = 0;
  std::vector<double> gain_history;  ///< one entry per evaluated policy
};

/// Policy iteration did not stabilize; carries the last iterate.
class PolicyIterationError : public ConvergenceError {
 public:
  PolicyIterationError(const std::string& what, int iterations, DecisionMatrix last, double last_gain)
      : ConvergenceError(what, iterations, last_gain), last_(std::move(last)), last_gain_(last_gain) {}

  const DecisionMatrix& last_policy() const noexcept { return last_; }
  double last_gain() const noexcept { return last_gain_; }

 private:
  DecisionMatrix last_;
  double last_gain_;
};

/// Average cost and bias (pinned to 0 at state (1, 2)) of a fixed policy.
struct PolicyEvaluation {
  double gain = 0.0;
  std::vector<double> bias;
};
PolicyEvaluation evaluate_policy(const MdpModel& model, const DecisionMatrix& decisions);

/// Average-cost policy iteration starting from MaxWeight. Exact evaluation
/// by a sparse LU solve, greedy improvement that only switches an action
/// when it improves by more than `tol` (relative); ties prefer agent 1.
OptimalPolicy solve_optimal(const MdpModel& model, double tol = 1e-9, int max_iter = 200);

/// Relative value iteration with an aperiodicity transform; stops when the
/// span of successive differences drops below `tol`. Cheaper per step than
/// solve_optimal on large N.
OptimalPolicy solve_optimal_rvi(const MdpModel& model, double tol = 1e-9, int max_iter = 1'000'000);

}  // namespace aoi
