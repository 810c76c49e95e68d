#include <gtest/gtest.h>

#include <cmath>

#include "aoi/error.hpp"
#include "aoi/mdp.hpp"
#include "aoi/policy.hpp"
#include "aoi/state.hpp"

namespace aoi {
namespace {

TEST(EvolveState, Examples) {
  EXPECT_EQ(evolve_state({3, 5}, Agent::kOne, true), (State{1, 6}));
  EXPECT_EQ(evolve_state({3, 5}, Agent::kOne, false), (State{4, 6}));
  EXPECT_EQ(evolve_state({1, 1}, Agent::kTwo, true), (State{2, 1}));
}

TEST(EvolveState, OtherComponentAlwaysGrowsByOne) {
  for (int x = 1; x <= 30; ++x) {
    for (int y = 1; y <= 30; ++y) {
      for (Agent a : {Agent::kOne, Agent::kTwo}) {
        for (bool ok : {true, false}) {
          const State n = evolve_state({x, y}, a, ok);
          const int chosen_before = a == Agent::kOne ? x : y;
          const int chosen_after = a == Agent::kOne ? n.x : n.y;
          const int other_before = a == Agent::kOne ? y : x;
          const int other_after = a == Agent::kOne ? n.y : n.x;
          EXPECT_EQ(other_after, other_before + 1);
          EXPECT_EQ(chosen_after, ok ? 1 : chosen_before + 1);
        }
      }
    }
  }
}

TEST(NetworkParams, RejectsOutOfRange) {
  EXPECT_THROW(NetworkParams(0.0, 0.2), ValidationError);
  EXPECT_THROW(NetworkParams(0.5, 0.0), ValidationError);
  EXPECT_THROW(NetworkParams(1.5, 0.5), ValidationError);
  EXPECT_THROW(NetworkParams(0.5, -0.1), ValidationError);
  EXPECT_THROW(NetworkParams(std::nan(""), 0.5), ValidationError);
  EXPECT_NO_THROW(NetworkParams(1.0, 1.0));
}

TEST(NetworkParams, DerivedQuantities) {
  const NetworkParams params(0.6, 0.2);
  EXPECT_DOUBLE_EQ(params.p_fail(), 0.4);
  EXPECT_DOUBLE_EQ(params.q_fail(), 0.8);
  EXPECT_DOUBLE_EQ(params.worst_failure(), 0.8);
  EXPECT_EQ(params.swapped(), NetworkParams(0.2, 0.6));
}

TEST(DecideMw, Examples) {
  EXPECT_EQ(decide_mw({1, 2}, {0.6, 0.2}), Agent::kOne);
  EXPECT_EQ(decide_mw({1, 10}, {0.9, 0.1}), Agent::kTwo);
  EXPECT_EQ(decide_mw({3, 3}, {0.5, 0.5}), Agent::kOne);
}

TEST(DecideMw, DecimalTiesGoToTieAgent) {
  // 0.95 * 2 and 0.1 * 19 differ in the last bits of their binary forms.
  const NetworkParams params(0.95, 0.1);
  EXPECT_EQ(decide_mw({2, 19}, params), Agent::kOne);
  EXPECT_EQ(decide_mw({2, 19}, params, Agent::kTwo), Agent::kTwo);
  EXPECT_EQ(decide_mw({2, 20}, params), Agent::kTwo);
}

TEST(DecideMw, IsCausal) {
  for (const NetworkParams params : {NetworkParams(0.6, 0.2), NetworkParams(0.95, 0.1), NetworkParams(0.3, 0.7)}) {
    for (int x = 1; x <= 200; ++x) {
      for (int y = 1; y <= 200; ++y) {
        if (decide_mw({x, y}, params) == Agent::kOne)
          EXPECT_EQ(decide_mw({x + 1, y}, params), Agent::kOne);
        else
          EXPECT_EQ(decide_mw({x, y + 1}, params), Agent::kTwo);
      }
    }
  }
}

TEST(DecideTabular, ConstantMatrix) {
  const Policy policy = Policy::tabular(DecisionMatrix(8, Agent::kOne));
  EXPECT_EQ(decide_tabular(policy, {5, 7}), Agent::kOne);
}

TEST(DecideTabular, TabulatedMaxWeightAgreesEntrywise) {
  const NetworkParams params(0.6, 0.2);
  const Policy mw = Policy::max_weight();
  const Policy table = Policy::tabular(tabulate(mw, params, 64));
  EXPECT_EQ(decide_tabular(table, {1, 2}), Agent::kOne);
  for (int x = 1; x <= 64; ++x)
    for (int y = 1; y <= 64; ++y) EXPECT_EQ(decide_tabular(table, {x, y}), mw.decide({x, y}, params));
}

TEST(DecideTabular, StatesBeyondRangeAreClamped) {
  DecisionMatrix m(4, Agent::kOne);
  m.set({4, 2}, Agent::kTwo);
  m.set({3, 4}, Agent::kTwo);
  const Policy policy = Policy::tabular(m);
  EXPECT_EQ(decide_tabular(policy, {9, 2}), Agent::kTwo);
  EXPECT_EQ(decide_tabular(policy, {3, 50}), Agent::kTwo);
  EXPECT_EQ(decide_tabular(policy, {50, 50}), Agent::kOne);
  EXPECT_THROW(decide_tabular(Policy::max_weight(), {1, 2}), ValidationError);
}

TEST(DecisionMatrix, SetOutsideRangeThrows) {
  DecisionMatrix m(3, Agent::kOne);
  EXPECT_THROW(m.set({4, 1}, Agent::kTwo), ValidationError);
  EXPECT_THROW(m.set({0, 1}, Agent::kTwo), ValidationError);
  EXPECT_THROW(DecisionMatrix(0, Agent::kOne), ValidationError);
}

TEST(DecisionMatrix, RelabelTransposesAndSwaps) {
  DecisionMatrix m(3, Agent::kOne);
  m.set({1, 3}, Agent::kTwo);
  const DecisionMatrix r = m.relabeled();
  EXPECT_EQ(r.at({3, 1}), Agent::kOne);
  EXPECT_EQ(r.at({1, 3}), Agent::kTwo);
  EXPECT_EQ(r.at({2, 2}), Agent::kTwo);
  EXPECT_EQ(r.relabeled(), m);
}

TEST(CheckCausality, MaxWeightHasNoViolations) {
  EXPECT_TRUE(check_causality(Policy::max_weight(), {0.6, 0.2}, 100).empty());
  EXPECT_TRUE(check_causality(Policy::max_weight(), {0.9, 0.1}, 100).empty());
}

TEST(CheckCausality, ConstructedViolation) {
  DecisionMatrix m(3, Agent::kOne);
  m.set({3, 2}, Agent::kTwo);
  const auto v = check_causality(Policy::tabular(m), {0.5, 0.5}, 3);
  // (2, 2) picks agent 1 but (3, 2) does not; (3, 2) picks agent 2 but
  // (3, 3) does not. Both break the implication.
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0], (State{2, 2}));
  EXPECT_EQ(v[1], (State{3, 2}));
}

TEST(CheckCausality, OptimalPolicyIsCausal) {
  const NetworkParams params(0.9, 0.1);
  const OptimalPolicy op = solve_optimal(build_model(params, 64));
  EXPECT_TRUE(check_causality(op.policy, params, 63).empty());
}

TEST(CheckCausality, RejectsTinyBound) {
  EXPECT_THROW(check_causality(Policy::max_weight(), {0.5, 0.5}, 1), ValidationError);
}

TEST(FirstReachableX, Examples) {
  EXPECT_EQ(first_reachable_x(Policy::max_weight(), {0.6, 0.2}, 4), 2);
  EXPECT_EQ(first_reachable_x(Policy::max_weight(), {0.6, 0.2}, 3), 1);
  EXPECT_EQ(first_reachable_x(Policy::max_weight(), {0.4, 0.4}, 7), 7);
}

TEST(FirstReachableX, TabulatedMaxWeightMatchesCeiling) {
  const NetworkParams params(0.6, 0.2);
  const Policy table = Policy::tabular(tabulate(Policy::max_weight(), params, 128));
  for (int y = 1; y <= 128; ++y)
    EXPECT_EQ(first_reachable_x(table, params, y), static_cast<int>(std::ceil(y / 3.0 - 1e-12))) << "y = " << y;
}

TEST(FirstReachableX, StarvedRowThrows) {
  DecisionMatrix m(4, Agent::kOne);
  for (int x = 1; x <= 4; ++x) m.set({x, 3}, Agent::kTwo);
  try {
    first_reachable_x(Policy::tabular(m), {0.5, 0.5}, 3);
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_NE(std::string(e.what()).find("boundary not found"), std::string::npos);
  }
}

TEST(FirstReachableY, MaxWeightAndTabular) {
  EXPECT_EQ(first_reachable_y(Policy::max_weight(), {0.6, 0.2}, 2), 7);
  EXPECT_EQ(first_reachable_y(Policy::tabular(DecisionMatrix(4, Agent::kOne)), {0.5, 0.5}, 2), -1);
}

TEST(BoundaryDelta, Examples) {
  EXPECT_EQ(boundary_delta(Policy::max_weight(), {0.6, 0.2}, 4), 0);
  EXPECT_EQ(boundary_delta(Policy::max_weight(), {0.6, 0.2}, 5), -1);
  for (int y = 2; y <= 50; ++y) EXPECT_EQ(boundary_delta(Policy::max_weight(), {0.3, 0.3}, y), 0);
}

TEST(BoundaryDelta, MaxWeightStepsAreMinusOneOrZero) {
  for (const NetworkParams params :
       {NetworkParams(0.6, 0.2), NetworkParams(0.9, 0.1), NetworkParams(0.95, 0.1), NetworkParams(0.7, 0.3)}) {
    for (int y = 2; y <= 1000; ++y) {
      const int d = boundary_delta(Policy::max_weight(), params, y);
      EXPECT_TRUE(d == -1 || d == 0) << "y = " << y << " delta = " << d;
    }
  }
}

}  // namespace
}  // namespace aoi
