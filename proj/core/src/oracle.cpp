#include "aoi/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aoi/error.hpp"

namespace aoi {

namespace {

double max_norm_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::fabs(a[i] - b[i]));
  return worst;
}

enum class Outcome { kConverged, kOscillating, kExhausted };

struct Run {
  Outcome outcome;
  int iterations;
  double residual;
};

Run iterate(const TransitionOperator& op, std::vector<double>& pi, double tol, int max_iter, bool lazy) {
  std::vector<double> next(pi.size()), before(pi.size());
  double residual = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    op.apply(pi, next);
    if (lazy)
      for (std::size_t i = 0; i < pi.size(); ++i) next[i] = 0.5 * (next[i] + pi[i]);
    residual = max_norm_diff(next, pi);
    if (residual <= tol) {
      pi.swap(next);
      return {Outcome::kConverged, it, residual};
    }
    // Two-step return with a large one-step change: periodic chain.
    if (!lazy && it > 2 && max_norm_diff(next, before) <= tol) return {Outcome::kOscillating, it, residual};
    before.swap(pi);
    pi.swap(next);
  }
  return {Outcome::kExhausted, max_iter, residual};
}

}  // namespace

void TransitionOperator::apply(const std::vector<double>& in, std::vector<double>& out) const {
  out.assign(rows.size(), 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double m = in[i];
    if (m == 0.0) continue;
    for (const Branch& b : rows[i]) out[static_cast<std::size_t>(index(b.to))] += m * b.probability;
  }
}

TransitionOperator build_operator(const Policy& policy, const NetworkParams& params, int n_trunc) {
  if (n_trunc < 4) throw ValidationError("oracle truncation N must be >= 4");
  TransitionOperator op;
  op.n_trunc = n_trunc;
  op.params = params;
  op.policy_id = policy.id();
  op.rows.resize(static_cast<std::size_t>(n_trunc) * n_trunc);
  auto clamp = [n_trunc](State s) { return State{std::min(s.x, n_trunc), std::min(s.y, n_trunc)}; };
  for (int y = 1; y <= n_trunc; ++y) {
    for (int x = 1; x <= n_trunc; ++x) {
      const State s{x, y};
      const Agent a = policy.decide(s, params);
      const double ps = params.success(a);
      op.rows[static_cast<std::size_t>(op.index(s))] = {Branch{clamp(evolve_state(s, a, true)), ps},
                                                       Branch{clamp(evolve_state(s, a, false)), 1.0 - ps}};
    }
  }
  return op;
}

Distribution stationary(const TransitionOperator& op, double tol, int max_iter) {
  if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");
  if (max_iter < 1) throw ValidationError("max_iter must be positive");
  const std::size_t count = op.rows.size();
  std::vector<double> pi(count, 1.0 / static_cast<double>(count));

  Run run = iterate(op, pi, tol, max_iter, false);
  if (run.outcome != Outcome::kConverged) {
    std::fill(pi.begin(), pi.end(), 1.0 / static_cast<double>(count));
    run = iterate(op, pi, tol, max_iter, true);
  }
  if (run.outcome != Outcome::kConverged) {
    std::ostringstream msg;
    msg << "power iteration did not reach tol " << tol << " in " << max_iter << " steps (residual " << run.residual
        << ')';
    throw ConvergenceError(msg.str(), run.iterations, run.residual);
  }

  Distribution dist;
  dist.params = op.params;
  dist.policy_id = op.policy_id;
  dist.grid = Grid(op.n_trunc);
  double total = 0.0;
  for (double v : pi) total += v;
  for (int y = 1; y <= op.n_trunc; ++y)
    for (int x = 1; x <= op.n_trunc; ++x) dist.grid(x, y) = pi[static_cast<std::size_t>(op.index({x, y}))] / total;
  dist.normalized = true;
  dist.norm_constant = 1.0 / total;
  return dist;
}

double average_cost(const Distribution& law) {
  double acc = 0.0;
  const int n = law.y_hat();
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y) acc += law.grid(x, y) * (x + y);
  return acc;
}

}  // namespace aoi
