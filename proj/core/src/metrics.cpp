#include "aoi/metrics.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include "aoi/error.hpp"
#include "aoi/exact_solver.hpp"
#include "aoi/grid_io.hpp"
#include "aoi/mdp.hpp"

namespace aoi {

namespace {

void require_normalized(const Distribution& dist) {
  if (!dist.normalized) throw ValidationError("distribution is not normalized");
}

SweepRow run_cell(const SweepSpec& spec, double p, double q) {
  SweepRow row;
  row.p = p;
  row.q = q;
  row.avg_op = std::numeric_limits<double>::quiet_NaN();
  row.gain_percent = std::numeric_limits<double>::quiet_NaN();
  try {
    const NetworkParams params(p, q);
    const SolverConfig config{spec.y_hat};
    const Distribution mw = solve(Policy::max_weight(), params, config);
    row.avg_mw = average_aoi(mw).value;
    if (spec.include_optimal) {
      const OptimalPolicy op = solve_optimal(build_model(params, spec.n_trunc), spec.tol, spec.max_iter);
      const Distribution op_dist = solve(op.policy, params, config);
      row.avg_op = average_aoi(op_dist).value;
      row.gain_percent = performance_gain(mw, op_dist);
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

AoiEstimate average_aoi(const Distribution& dist) {
  require_normalized(dist);
  AoiEstimate out;
  out.value = moment(dist, 1, Component::kTotal);
  const double r = dist.params.worst_failure();
  out.truncation_bound = dist.tail_mass * (2.0 * dist.y_hat() + 2.0 / (1.0 - r));
  return out;
}

double moment(const Distribution& dist, int k, Component which) {
  require_normalized(dist);
  if (k < 1) throw ValidationError("moment order must be >= 1");
  const int n = dist.y_hat();
  double acc = 0.0;
  for (int x = 1; x <= n; ++x) {
    for (int y = 1; y <= n; ++y) {
      const double f = dist.grid(x, y);
      if (f == 0.0) continue;
      const double g = which == Component::kFirst ? x : which == Component::kSecond ? y : x + y;
      acc += f * std::pow(g, k);
    }
  }
  return acc;
}

double performance_gain(const Distribution& dist_mw, const Distribution& dist_op) {
  if (!(dist_mw.params == dist_op.params)) throw ValidationError("performance_gain: parameter mismatch");
  const double mw = average_aoi(dist_mw).value;
  const double op = average_aoi(dist_op).value;
  return 100.0 * (mw - op) / mw;
}

SweepTable sweep(const SweepSpec& spec) {
  if (spec.p_values.empty() || spec.q_values.empty()) throw ValidationError("sweep needs non-empty p and q ranges");
  for (double v : spec.p_values) NetworkParams(v, 1.0);
  for (double v : spec.q_values) NetworkParams(1.0, v);

  SweepTable table;
  table.p_values = spec.p_values;
  table.q_values = spec.q_values;
  const std::size_t cells = spec.p_values.size() * spec.q_values.size();
  table.rows.resize(cells);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells; i = next++) {
      const double p = spec.p_values[i / spec.q_values.size()];
      const double q = spec.q_values[i % spec.q_values.size()];
      table.rows[i] = run_cell(spec, p, q);
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(spec.threads, static_cast<unsigned>(cells)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return table;
}

void write_sweep_csv(std::ostream& out, const SweepTable& table) {
  out << "p,q,avg_mw,avg_op,gain_percent\n";
  for (const SweepRow& r : table.rows)
    out << format_real(r.p) << ',' << format_real(r.q) << ',' << format_real(r.avg_mw) << ','
        << format_real(r.avg_op) << ',' << format_real(r.gain_percent) << '\n';
}

void write_sweep_surface(std::ostream& out, const SweepTable& table, const std::vector<std::string>& header) {
  const std::size_t nq = table.q_values.size();
  write_surface(out, header, table.p_values, table.q_values,
                [&](std::size_t i, std::size_t j) { return table.rows[i * nq + j].gain_percent; });
}

}  // namespace aoi
