#include <gtest/gtest.h>

#include <cmath>

#include "aoi/error.hpp"
#include "aoi/exact_solver.hpp"
#include "aoi/metrics.hpp"
#include "aoi/simulator.hpp"

namespace aoi {
namespace {

double max_error(const SimResult& sim, const Distribution& exact, int window) {
  return max_abs_difference(sim.empirical.grid, exact.grid, window);
}

TEST(Simulate, DeterministicTwoCycle) {
  for (std::uint64_t seed : {1u, 99u}) {
    const SimResult sim = simulate(Policy::max_weight(), {1.0, 1.0}, 10000, seed, 8);
    EXPECT_EQ(sim.empirical.grid(1, 2), 0.5);
    EXPECT_EQ(sim.empirical.grid(2, 1), 0.5);
    EXPECT_EQ(sim.avg_aoi, 3.0);
    EXPECT_EQ(sim.empirical.tail_mass, 0.0);
  }
}

TEST(Simulate, Reproducible) {
  const SimResult a = simulate(Policy::max_weight(), {0.6, 0.2}, 100000, 42, 64);
  const SimResult b = simulate(Policy::max_weight(), {0.6, 0.2}, 100000, 42, 64);
  const SimResult c = simulate(Policy::max_weight(), {0.6, 0.2}, 100000, 43, 64);
  EXPECT_EQ(a.empirical.grid, b.empirical.grid);
  EXPECT_EQ(a.avg_aoi, b.avg_aoi);
  EXPECT_NE(a.empirical.grid, c.empirical.grid);
  EXPECT_EQ(a.seed, 42u);
  EXPECT_EQ(a.steps, 100000u);
}

TEST(Simulate, NeverVisitsDiagonal) {
  const SimResult sim = simulate(Policy::max_weight(), {0.5, 0.5}, 200000, 3, 64, 0);
  for (int k = 2; k <= 64; ++k) EXPECT_EQ(sim.empirical.grid(k, k), 0.0);
}

TEST(Simulate, MatchesExactAtMillionSteps) {
  const NetworkParams params(0.6, 0.2);
  const Distribution exact = solve(Policy::max_weight(), params, {512});
  const SimResult sim = simulate(Policy::max_weight(), params, 1000000, 7, 512);
  EXPECT_LE(max_error(sim, exact, 512), 1e-3);
  EXPECT_GE(sim.avg_aoi, 3.0);
}

TEST(Simulate, AverageTracksExactAtAsymmetricCell) {
  const NetworkParams params(0.9, 0.1);
  const double exact = average_aoi(solve(Policy::max_weight(), params, {1024})).value;
  const SimResult sim = simulate(Policy::max_weight(), params, 10000000, 11, 256);
  EXPECT_NEAR(sim.avg_aoi, exact, 0.2);
}

TEST(Simulate, ErrorShrinksWithMoreSteps) {
  const NetworkParams params(0.6, 0.2);
  const Distribution exact = solve(Policy::max_weight(), params, {256});
  double short_run = 0.0, long_run = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    short_run += max_error(simulate(Policy::max_weight(), params, 10000, seed, 256), exact, 256);
    long_run += max_error(simulate(Policy::max_weight(), params, 1000000, seed, 256), exact, 256);
  }
  EXPECT_LT(long_run, short_run / 3.0);
}

TEST(Simulate, AverageWithinThreeStandardErrors) {
  const NetworkParams params(0.6, 0.2);
  const double exact = average_aoi(solve(Policy::max_weight(), params, {512})).value;
  std::vector<double> runs;
  for (std::uint64_t seed = 1; seed <= 5; ++seed)
    runs.push_back(simulate(Policy::max_weight(), params, 1000000, seed, 64).avg_aoi);
  double mean = 0.0;
  for (double r : runs) mean += r / runs.size();
  double var = 0.0;
  for (double r : runs) var += (r - mean) * (r - mean) / (runs.size() - 1);
  const double se = std::sqrt(var / runs.size());
  EXPECT_LE(std::fabs(mean - exact), 3.0 * se);
}

TEST(Simulate, OverflowGoesToTailMass) {
  const SimResult sim = simulate(Policy::max_weight(), {0.9, 0.1}, 100000, 5, 8);
  EXPECT_GT(sim.empirical.tail_mass, 0.0);
  EXPECT_NEAR(sim.empirical.grid.sum() + sim.empirical.tail_mass, 1.0, 1e-12);
}

TEST(Simulate, RejectsBadArguments) {
  EXPECT_THROW(simulate(Policy::max_weight(), {0.6, 0.2}, 0, 1, 8), ValidationError);
  EXPECT_THROW(simulate(Policy::max_weight(), {0.6, 0.2}, 10, 1, 0), ValidationError);
}

}  // namespace
}  // namespace aoi
