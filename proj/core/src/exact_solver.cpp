#include "aoi/exact_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "aoi/error.hpp"

namespace aoi {

namespace {

enum class RootRecursion { kGeneral, kMaxWeightClosedForm };

double failure_at(const Policy& policy, const NetworkParams& params, State s) {
  return params.failure(policy.decide(s, params));
}

// Neumaier summation; the grid can hold ~10^6 terms of very different size.
double compensated_sum(std::span<const double> values) {
  double sum = 0.0, carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    carry += std::fabs(sum) >= std::fabs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return sum + carry;
}

// Solves in the orientation p >= q. Returns the unnormalized grid f_A with
// f_A(1, 2) = 1.
Grid solve_oriented(const Policy& policy, const NetworkParams& params, int n, RootRecursion rule) {
  const double p = params.p();
  const double p_fail = params.p_fail();
  const double q = params.q();
  const double q_fail = params.q_fail();

  std::vector<int> boundary(static_cast<std::size_t>(n), 0);  // boundary[y] = x'(y)
  for (int y = 1; y < n; ++y) {
    const int xb = first_reachable_x(policy, params, y);
    if (xb > y + 1) {
      std::ostringstream msg;
      msg << "switching boundary x'(" << y << ") = " << xb << " lies above the diagonal (requires x'(y) <= y + 1)";
      throw SolverError(msg.str());
    }
    boundary[static_cast<std::size_t>(y)] = xb;
  }

  Grid f(n);
  f(1, 2) = 1.0;
  propagate_diagonal(f, {1, 2}, policy, params);

  for (int y = 2; y < n; ++y) {
    const int xb = boundary[static_cast<std::size_t>(y)];
    const int xb_prev = boundary[static_cast<std::size_t>(y - 1)];
    double correction = 0.0;
    if (rule == RootRecursion::kGeneral) {
      const int delta = xb - xb_prev - 1;
      if (delta < 0) {
        // States newly able to reach (1, y + 1); all lie on or above the diagonal.
        for (int x = xb; x <= xb_prev; ++x) correction += f(x, y);
      } else if (delta > 0) {
        // States dropped from the set that reached (1, y).
        for (int x = xb_prev + 1; x < xb; ++x) correction -= f(x, y);
      }
    } else if (xb == xb_prev) {
      const int root_y = y - xb + 1;
      correction = f(1, root_y) * std::pow(q_fail, xb - 1);
    }

    double value = p_fail * f(1, y) + p * correction;
    if (value < 0.0) {
      const double scale = p_fail * f(1, y) + p * std::fabs(correction);
      if (value < -1e-12 * scale) {
        std::ostringstream msg;
        msg << "negative root probability at (1," << y + 1 << "); the policy is not causal";
        throw SolverError(msg.str());
      }
      value = 0.0;
    }
    f(1, y + 1) = value;
    propagate_diagonal(f, {1, y + 1}, policy, params);
  }

  const int x_end = x_axis_extent(params, n);
  if (x_end < 2) {
    std::ostringstream msg;
    msg << "y_hat = " << n << " is too small for p/q = " << p / q << ": no x-axis root fits in the grid";
    throw SolverError(msg.str());
  }
  for (int x = 1; x < x_end; ++x) {
    const int y_first = first_reachable_y(policy, params, x);
    double mass = 0.0;
    if (y_first >= 1)
      for (int y = y_first; y <= n; ++y) mass += f(x, y);
    f(x + 1, 1) = q * mass;
    propagate_diagonal(f, {x + 1, 1}, policy, params);
  }
  return f;
}

// Scales the oriented grid to unit mass, then rebuilds every diagonal from
// its scaled root so the diagonal law holds exactly on the stored values.
Distribution finish(Grid oriented, const Policy& policy, const NetworkParams& oriented_params, bool swapped,
                    const NetworkParams& params, const std::string& policy_id) {
  const double total = compensated_sum(oriented.cells());
  const double a = 1.0 / total;
  const int n = oriented.size();
  for (int k = 2; k <= n; ++k) {
    oriented(1, k) *= a;
    oriented(k, 1) *= a;
  }
  for (int k = 2; k <= n; ++k) {
    propagate_diagonal(oriented, {1, k}, policy, oriented_params);
    propagate_diagonal(oriented, {k, 1}, policy, oriented_params);
  }

  Distribution dist;
  dist.params = params;
  dist.policy_id = policy_id;
  dist.grid = swapped ? oriented.transposed() : std::move(oriented);
  dist.norm_constant = a;
  dist.normalized = true;
  dist.tail_mass = tail_mass_bound(dist);
  return dist;
}

void check_config(const SolverConfig& config) {
  if (config.y_hat < 4) throw ValidationError("y_hat must be >= 4");
  if (!(config.tail_tolerance >= 0.0)) throw ValidationError("tail_tolerance must be non-negative");
}

// Geometric continuation of a root sequence past its last value. Root
// sequences oscillate (the boundary recursion has a proportional delay), so
// the decay rate comes from the envelope of two adjacent windows rather
// than from single steps.
double extrapolated_root_mass(const std::vector<double>& seq) {
  const std::size_t w = seq.size() / 2;
  if (w == 0) return 0.0;
  double older = 0.0, recent = 0.0;
  for (std::size_t i = seq.size() - 2 * w; i < seq.size() - w; ++i) older = std::max(older, seq[i]);
  for (std::size_t i = seq.size() - w; i < seq.size(); ++i) recent = std::max(recent, seq[i]);
  if (recent == 0.0) return 0.0;
  if (older == 0.0) return std::numeric_limits<double>::infinity();
  const double rate = std::pow(recent / older, 1.0 / static_cast<double>(w));
  if (rate >= 1.0) return std::numeric_limits<double>::infinity();
  return recent * rate / (1.0 - rate);
}

// Envelope window used by tail_mass_bound: at least five roots.
int tail_window(int available) { return std::clamp(available / 16, 5, std::max(5, available / 2)); }

}  // namespace

double diagonal_attenuation(const Policy& policy, const NetworkParams& params, State s) {
  if (s.x < 1 || s.y < 1) throw ValidationError("diagonal_attenuation needs a valid state");
  const int steps = std::min(s.x, s.y) - 1;
  State cur{s.x - steps, s.y - steps};
  double d = 1.0;
  for (int k = 0; k < steps; ++k) {
    d *= failure_at(policy, params, cur);
    ++cur.x;
    ++cur.y;
  }
  return d;
}

void propagate_diagonal(Grid& grid, State root, const Policy& policy, const NetworkParams& params) {
  if (std::min(root.x, root.y) != 1) throw ValidationError("propagate_diagonal needs a root state");
  State cur = root;
  while (cur.x < grid.size() && cur.y < grid.size()) {
    const double next = grid[cur] * failure_at(policy, params, cur);
    ++cur.x;
    ++cur.y;
    grid[cur] = next;
  }
}

int x_axis_extent(const NetworkParams& oriented, int y_hat) {
  const double scaled = oriented.q() / oriented.p() * y_hat;
  const int x_end = static_cast<int>(std::floor(scaled + 1e-9)) + 1;
  return std::min(x_end, y_hat);
}

Distribution solve(const Policy& policy, const NetworkParams& params, const SolverConfig& config) {
  check_config(config);
  if (const DecisionMatrix* m = policy.matrix(); m != nullptr && m->size() >= 2) {
    const auto violations = check_causality(policy, params, m->size());
    if (!violations.empty()) {
      std::ostringstream msg;
      msg << "policy is not causal: " << violations.size() << " violating state(s), first " << violations.front();
      throw SolverError(msg.str());
    }
  }
  const bool swap = params.p() < params.q();
  const Policy oriented = swap ? policy.relabeled() : policy;
  const NetworkParams oriented_params = swap ? params.swapped() : params;
  Grid g = solve_oriented(oriented, oriented_params, config.y_hat, RootRecursion::kGeneral);
  return finish(std::move(g), oriented, oriented_params, swap, params, policy.id());
}

Distribution solve_mw_closed_form(const NetworkParams& params, const SolverConfig& config) {
  check_config(config);
  const bool swap = params.p() < params.q();
  const Policy oriented = swap ? Policy::max_weight().relabeled() : Policy::max_weight();
  const NetworkParams oriented_params = swap ? params.swapped() : params;
  Grid g = solve_oriented(oriented, oriented_params, config.y_hat, RootRecursion::kMaxWeightClosedForm);
  return finish(std::move(g), oriented, oriented_params, swap, params, "mw");
}

double tail_mass_bound(const Distribution& dist) {
  const bool swap = dist.params.p() < dist.params.q();
  const NetworkParams params = swap ? dist.params.swapped() : dist.params;
  const Grid& g = dist.grid;
  const int n = g.size();
  auto at = [&](int x, int y) { return swap ? g(y, x) : g(x, y); };

  const double r = params.worst_failure();
  if (r == 0.0) return 0.0;
  const double continuation = r / (1.0 - r);

  double bound = 0.0;
  for (int k = 1; k <= n; ++k) {
    bound += at(n, k) * continuation;
    if (k != n) bound += at(k, n) * continuation;
  }

  // y-axis roots (1, 2..n), x-axis roots (2..x_end, 1).
  const int y_window = tail_window(n - 1);
  std::vector<double> y_roots;
  for (int y = std::max(2, n - 2 * y_window + 1); y <= n; ++y) y_roots.push_back(at(1, y));
  bound += extrapolated_root_mass(y_roots) / (1.0 - r);

  const int x_end = x_axis_extent(params, n);
  const int x_window = tail_window(x_end - 1);
  std::vector<double> x_roots;
  for (int x = std::max(2, x_end - 2 * x_window + 1); x <= x_end; ++x) x_roots.push_back(at(x, 1));
  bound += extrapolated_root_mass(x_roots) / (1.0 - r);
  return bound;
}

double pantograph_residual(const Distribution& dist) {
  const NetworkParams& params = dist.params;
  const double ratio = params.p() / params.q();
  const double kappa_real = std::round(ratio);
  if (kappa_real < 1.0 || std::fabs(ratio - kappa_real) > 1e-9)
    throw ValidationError("pantograph check requires integer ratio p/q");
  const int kappa = static_cast<int>(kappa_real);
  const Grid& g = dist.grid;

  // The root recursion produces (1, y + 1) for y >= 2, hence km >= 2.
  double worst = 0.0;
  for (int m = 1; kappa * m + 1 <= g.size(); ++m) {
    if (kappa * m < 2) continue;
    const double lhs = g(1, kappa * m + 1);
    const double delayed = g(1, (kappa - 1) * m + 1);
    const double rhs = params.p_fail() * g(1, kappa * m) + params.p() * std::pow(params.q_fail(), m - 1) * delayed;
    worst = std::max(worst, std::fabs(lhs - rhs));
  }
  return worst;
}

}  // namespace aoi
