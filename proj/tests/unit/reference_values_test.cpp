#include <gtest/gtest.h>

#include "aoi/exact_solver.hpp"
#include "aoi/metrics.hpp"

// Reference values from an independent power iteration of the clamped
// chain (N = 450, exact rational tie tests), frozen here.

namespace aoi {
namespace {

TEST(ReferenceValues, MaxWeightP06Q02) {
  const Distribution d = solve(Policy::max_weight(), {0.6, 0.2}, {512});
  EXPECT_NEAR(average_aoi(d).value, 10.408828421698935, 1e-9);
  EXPECT_NEAR(d.grid(1, 2), 0.054202291274695266, 1e-13);
  EXPECT_NEAR(d.grid(2, 1), 0.04411679221542657, 1e-13);
  EXPECT_NEAR(d.grid(3, 6), 0.017344733207902488, 1e-13);
  EXPECT_NEAR(d.norm_constant, 0.054202291274695266, 1e-13);
}

TEST(ReferenceValues, MaxWeightP09Q01) {
  const Distribution d = solve(Policy::max_weight(), {0.9, 0.1}, {1024});
  EXPECT_NEAR(average_aoi(d).value, 18.161661418185616, 1e-9);
  EXPECT_NEAR(d.grid(1, 2), 0.03635564399187905, 1e-13);
  EXPECT_NEAR(d.grid(2, 1), 0.024559840814617647, 1e-13);
}

TEST(ReferenceValues, MaxWeightAroundTheBump) {
  EXPECT_NEAR(average_aoi(solve(Policy::max_weight(), {0.94, 0.1}, {1024})).value, 17.974626111118404, 1e-9);
  EXPECT_NEAR(average_aoi(solve(Policy::max_weight(), {0.95, 0.1}, {1024})).value, 18.11086407149449, 1e-9);
}

}  // namespace
}  // namespace aoi
