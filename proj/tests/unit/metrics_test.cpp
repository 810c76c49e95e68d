#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "aoi/error.hpp"
#include "aoi/exact_solver.hpp"
#include "aoi/mdp.hpp"
#include "aoi/metrics.hpp"
#include "aoi/simulator.hpp"

namespace aoi {
namespace {

Distribution two_cycle() {
  Distribution d;
  d.grid = Grid(4);
  d.grid(1, 2) = 0.5;
  d.grid(2, 1) = 0.5;
  d.normalized = true;
  return d;
}

TEST(AverageAoi, TwoCycle) {
  const AoiEstimate e = average_aoi(two_cycle());
  EXPECT_DOUBLE_EQ(e.value, 3.0);
  EXPECT_EQ(e.truncation_bound, 0.0);
}

TEST(AverageAoi, RequiresNormalizedInput) {
  Distribution d = two_cycle();
  d.normalized = false;
  EXPECT_THROW(average_aoi(d), ValidationError);
}

TEST(AverageAoi, AsymmetricCellWindows) {
  const NetworkParams params(0.9, 0.1);
  const double mw = average_aoi(solve(Policy::max_weight(), params, {1024})).value;
  EXPECT_GE(mw, 17.6);
  EXPECT_LE(mw, 18.3);
  const OptimalPolicy op = solve_optimal(build_model(params, 64));
  const double avg_op = average_aoi(solve(op.policy, params, {1024})).value;
  EXPECT_GE(avg_op, 14.7);
  EXPECT_LE(avg_op, 15.4);
}

TEST(AverageAoi, SymmetricUnderLabelSwap) {
  // Irrational-looking ratio: no ties inside the grid, so the tie rule
  // plays no part and the swap is exact.
  const NetworkParams a(0.61803398875, 0.3), b(0.3, 0.61803398875);
  EXPECT_NEAR(average_aoi(solve(Policy::max_weight(), a, {1024})).value,
              average_aoi(solve(Policy::max_weight(), b, {1024})).value, 1e-9);
  // With ties inside the grid, the swap also has to move the tie agent.
  EXPECT_NEAR(average_aoi(solve(Policy::max_weight(), {0.7, 0.3}, {1024})).value,
              average_aoi(solve(Policy::max_weight(Agent::kTwo), {0.3, 0.7}, {1024})).value, 1e-9);
}

TEST(Moment, TwoCycle) {
  const Distribution d = two_cycle();
  EXPECT_DOUBLE_EQ(moment(d, 1, Component::kTotal), 3.0);
  EXPECT_DOUBLE_EQ(moment(d, 2, Component::kTotal), 9.0);
  EXPECT_DOUBLE_EQ(moment(d, 1, Component::kFirst), 1.5);
  EXPECT_DOUBLE_EQ(moment(d, 2, Component::kSecond), 2.5);
  EXPECT_THROW(moment(d, 0, Component::kTotal), ValidationError);
}

TEST(Moment, SecondMomentMatchesMonteCarlo) {
  const NetworkParams params(0.6, 0.2);
  const double exact = moment(solve(Policy::max_weight(), params, {512}), 2, Component::kTotal);
  const SimResult sim = simulate(Policy::max_weight(), params, 10000000, 2024, 512);
  Distribution empirical = sim.empirical;
  empirical.normalized = true;
  EXPECT_NEAR(moment(empirical, 2, Component::kTotal), exact, 0.01 * exact);
}

TEST(PerformanceGain, IdenticalInputsGiveZero) {
  const Distribution d = solve(Policy::max_weight(), {0.6, 0.2}, {256});
  EXPECT_EQ(performance_gain(d, d), 0.0);
}

TEST(PerformanceGain, EqualProbabilitiesGiveNoGain) {
  const NetworkParams params(0.5, 0.5);
  const OptimalPolicy op = solve_optimal(build_model(params, 64));
  const double gain = performance_gain(solve(Policy::max_weight(), params, {1024}), solve(op.policy, params, {1024}));
  EXPECT_NEAR(gain, 0.0, 0.5);
}

TEST(PerformanceGain, RejectsMismatchedParameters) {
  EXPECT_THROW(performance_gain(solve(Policy::max_weight(), {0.6, 0.2}, {64}),
                                solve(Policy::max_weight(), {0.6, 0.3}, {64})),
               ValidationError);
}

TEST(Sweep, MaxWeightCurveIsNotMonotone) {
  SweepSpec spec;
  for (int i = 0; i <= 9; ++i) spec.p_values.push_back(0.90 + 0.01 * i);
  spec.q_values = {0.1};
  spec.include_optimal = false;
  const SweepTable table = sweep(spec);
  ASSERT_EQ(table.rows.size(), 10u);
  EXPECT_GT(table.rows[5].avg_mw, table.rows[4].avg_mw);
  for (const SweepRow& r : table.rows) {
    EXPECT_TRUE(r.error.empty());
    EXPECT_TRUE(std::isnan(r.avg_op));
  }
}

TEST(Sweep, SingleEqualCellHasNoGain) {
  SweepSpec spec;
  spec.p_values = {0.5};
  spec.q_values = {0.5};
  spec.n_trunc = 64;
  const SweepTable table = sweep(spec);
  ASSERT_EQ(table.rows.size(), 1u);
  EXPECT_NEAR(table.rows[0].gain_percent, 0.0, 1e-3);
}

TEST(Sweep, OutputIndependentOfThreadCount) {
  SweepSpec spec;
  spec.p_values = {0.2, 0.5, 0.8};
  spec.q_values = {0.3, 0.6};
  spec.n_trunc = 32;
  spec.y_hat = 256;
  spec.threads = 1;
  std::ostringstream one, many;
  write_sweep_csv(one, sweep(spec));
  spec.threads = 4;
  write_sweep_csv(many, sweep(spec));
  EXPECT_EQ(one.str(), many.str());
}

TEST(Sweep, FullGridShape) {
  SweepSpec spec;
  for (int i = 1; i <= 9; ++i) {
    spec.p_values.push_back(i / 10.0);
    spec.q_values.push_back(i / 10.0);
  }
  spec.n_trunc = 128;
  spec.threads = 4;
  const SweepTable table = sweep(spec);
  ASSERT_EQ(table.rows.size(), 81u);
  double peak = 0.0;
  for (const SweepRow& r : table.rows) {
    ASSERT_TRUE(r.error.empty()) << r.p << ',' << r.q << ": " << r.error;
    EXPECT_GE(r.gain_percent, -1e-4) << r.p << ',' << r.q;
    if (r.p == r.q) {
      EXPECT_NEAR(r.gain_percent, 0.0, 1e-3) << r.p;
    }
    peak = std::max(peak, r.gain_percent);
  }
  const SweepRow& corner = table.rows[8 * 9 + 0];  // p = 0.9, q = 0.1
  EXPECT_EQ(peak, std::max(corner.gain_percent, table.rows[0 * 9 + 8].gain_percent));
  // Along q = 0.1 the gain grows with p - q.
  for (int i = 1; i < 9; ++i) EXPECT_GE(table.rows[i * 9].gain_percent, table.rows[(i - 1) * 9].gain_percent - 1e-6);
}

TEST(Sweep, RejectsEmptyAxes) { EXPECT_THROW(sweep(SweepSpec{}), ValidationError); }

TEST(Sweep, CsvAndSurfaceLayout) {
  SweepTable table;
  table.p_values = {0.5};
  table.q_values = {0.25};
  table.rows.push_back(SweepRow{0.5, 0.25, 8.0, 7.5, 6.25, ""});
  std::ostringstream csv, surface;
  write_sweep_csv(csv, table);
  EXPECT_EQ(csv.str(), "p,q,avg_mw,avg_op,gain_percent\n0.5,0.25,8,7.5,6.25\n");
  write_sweep_surface(surface, table, {" note"});
  EXPECT_EQ(surface.str(), "# note\n0.5 0.25 6.25\n\n");
}

}  // namespace
}  // namespace aoi
