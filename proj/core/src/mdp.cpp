#include "aoi/mdp.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace aoi {

namespace {

constexpr State kPinnedState{1, 2};

double action_value(const MdpModel& model, const std::vector<double>& h, State s, Agent a) {
  double v = 0.0;
  for (const Branch& b : model.transitions(s, a)) v += b.probability * h[static_cast<std::size_t>(model.index(b.to))];
  return v;
}

// Greedy step. Returns the number of states whose action changed.
int improve(const MdpModel& model, const std::vector<double>& h, DecisionMatrix& decisions, double tol) {
  int changed = 0;
  const int n = model.n_trunc();
  for (int y = 1; y <= n; ++y) {
    for (int x = 1; x <= n; ++x) {
      const State s{x, y};
      const double v1 = action_value(model, h, s, Agent::kOne);
      const double v2 = action_value(model, h, s, Agent::kTwo);
      const double slack = tol * std::max({1.0, std::fabs(v1), std::fabs(v2)});
      const Agent best = v1 <= v2 + slack ? Agent::kOne : Agent::kTwo;
      const Agent current = decisions.at(s);
      if (best == current) continue;
      const double v_best = best == Agent::kOne ? v1 : v2;
      const double v_current = current == Agent::kOne ? v1 : v2;
      if (v_best < v_current - slack) {
        decisions.set(s, best);
        ++changed;
      }
    }
  }
  return changed;
}

}  // namespace

MdpModel::MdpModel(const NetworkParams& params, int n_trunc) : params_(params), n_(n_trunc) {
  if (n_trunc < 4) throw ValidationError("MDP truncation N must be >= 4");
}

std::array<Branch, 2> MdpModel::transitions(State s, Agent a) const noexcept {
  const double ps = params_.success(a);
  return {Branch{clamp(evolve_state(s, a, true)), ps}, Branch{clamp(evolve_state(s, a, false)), 1.0 - ps}};
}

MdpModel build_model(const NetworkParams& params, int n_trunc) { return MdpModel(params, n_trunc); }

PolicyEvaluation evaluate_policy(const MdpModel& model, const DecisionMatrix& decisions) {
  if (decisions.size() != model.n_trunc()) throw ValidationError("decision matrix size differs from the model");
  const int count = model.num_states();
  const int pinned = model.index(kPinnedState);

  // Unknowns: bias h(s) for s != pinned, and the gain g stored in the pinned
  // slot. Row s: h(s) - sum_t P(s, t) h(t) + g = c(s).
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(count) * 4);
  Eigen::VectorXd rhs(count);
  for (int i = 0; i < count; ++i) {
    const State s = model.state(i);
    double diag = i == pinned ? 0.0 : 1.0;
    for (const Branch& b : model.transitions(s, decisions.at(s))) {
      const int j = model.index(b.to);
      if (j == pinned || b.probability == 0.0) continue;
      if (j == i) {
        diag -= b.probability;
      } else {
        triplets.emplace_back(i, j, -b.probability);
      }
    }
    if (diag != 0.0) triplets.emplace_back(i, i, diag);
    triplets.emplace_back(i, pinned, 1.0);
    rhs[i] = model.cost(s);
  }
  Eigen::SparseMatrix<double> a(count, count);
  a.setFromTriplets(triplets.begin(), triplets.end());
  a.makeCompressed();

  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) throw ConvergenceError("policy evaluation: singular bias system", 0, 0.0);
  const Eigen::VectorXd sol = lu.solve(rhs);
  if (lu.info() != Eigen::Success) throw ConvergenceError("policy evaluation: solve failed", 0, 0.0);

  PolicyEvaluation out;
  out.gain = sol[pinned];
  out.bias.assign(sol.data(), sol.data() + count);
  out.bias[static_cast<std::size_t>(pinned)] = 0.0;
  return out;
}

OptimalPolicy solve_optimal(const MdpModel& model, double tol, int max_iter) {
  if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");
  if (max_iter < 1) throw ValidationError("max_iter must be positive");
  DecisionMatrix decisions = tabulate(Policy::max_weight(), model.params(), model.n_trunc());
  OptimalPolicy out{Policy::max_weight(), 0.0, 0, {}};

  for (int it = 1; it <= max_iter; ++it) {
    const PolicyEvaluation eval = evaluate_policy(model, decisions);
    if (!out.gain_history.empty()) {
      const double previous = out.gain_history.back();
      if (eval.gain > previous + 1e-9 * std::max(1.0, std::fabs(previous))) {
        std::ostringstream msg;
        msg << "policy iteration lost monotonicity: gain rose from " << previous << " to " << eval.gain;
        throw PolicyIterationError(msg.str(), it, decisions, eval.gain);
      }
    }
    out.gain_history.push_back(eval.gain);
    if (improve(model, eval.bias, decisions, tol) == 0) {
      out.gain = eval.gain;
      out.iterations = it;
      out.policy = Policy::tabular(std::move(decisions), "op");
      return out;
    }
  }
  const double last_gain = out.gain_history.empty() ? 0.0 : out.gain_history.back();
  std::ostringstream msg;
  msg << "policy iteration did not stabilize within " << max_iter << " iterations";
  throw PolicyIterationError(msg.str(), max_iter, decisions, last_gain);
}

OptimalPolicy solve_optimal_rvi(const MdpModel& model, double tol, int max_iter) {
  if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");
  if (max_iter < 1) throw ValidationError("max_iter must be positive");
  constexpr double kLaziness = 0.5;  // P' = tau P + (1 - tau) I keeps the chain aperiodic
  const int count = model.num_states();
  const auto pinned = static_cast<std::size_t>(model.index(kPinnedState));
  std::vector<double> h(static_cast<std::size_t>(count), 0.0), next(h.size());
  DecisionMatrix decisions(model.n_trunc(), Agent::kOne);

  double lo = 0.0, hi = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    for (int i = 0; i < count; ++i) {
      const State s = model.state(i);
      const double v1 = action_value(model, h, s, Agent::kOne);
      const double v2 = action_value(model, h, s, Agent::kTwo);
      const double best = std::min(v1, v2);
      decisions.set(s, v1 <= v2 ? Agent::kOne : Agent::kTwo);
      next[static_cast<std::size_t>(i)] =
          kLaziness * (model.cost(s) + best) + (1.0 - kLaziness) * h[static_cast<std::size_t>(i)];
    }
    lo = hi = next[0] - h[0];
    for (std::size_t i = 0; i < h.size(); ++i) {
      const double d = next[i] - h[i];
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    const double offset = next[pinned];
    for (std::size_t i = 0; i < h.size(); ++i) h[i] = next[i] - offset;
    if (hi - lo < tol * kLaziness) {
      OptimalPolicy out{Policy::tabular(std::move(decisions), "op"), 0.5 * (lo + hi) / kLaziness, it, {}};
      out.gain_history.push_back(out.gain);
      return out;
    }
  }
  std::ostringstream msg;
  msg << "relative value iteration did not converge within " << max_iter << " sweeps";
  throw PolicyIterationError(msg.str(), max_iter, decisions, 0.5 * (lo + hi) / kLaziness);
}

}  // namespace aoi
