#include "aoi/policy.hpp"

#include <cmath>
#include <sstream>

#include "aoi/error.hpp"

namespace aoi {

namespace {

// Relative width inside which x*p and y*q count as equal. Decimal inputs
// such as p = 0.95, q = 0.1 give products that differ in the last bits
// even when the rational values tie.
constexpr double kTieTolerance = 1e-12;

int mw_first_reachable_x(const NetworkParams& params, Agent tie_agent, int y) {
  auto picks_one = [&](int x) { return decide_mw({x, y}, params, tie_agent) == Agent::kOne; };
  int x = static_cast<int>(std::ceil(params.q() / params.p() * y));
  if (x < 1) x = 1;
  while (x > 1 && picks_one(x - 1)) --x;
  while (!picks_one(x)) ++x;
  return x;
}

int mw_first_reachable_y(const NetworkParams& params, Agent tie_agent, int x) {
  auto picks_two = [&](int y) { return decide_mw({x, y}, params, tie_agent) == Agent::kTwo; };
  int y = static_cast<int>(std::floor(params.p() / params.q() * x));
  if (y < 1) y = 1;
  while (y > 1 && picks_two(y - 1)) --y;
  while (!picks_two(y)) ++y;
  return y;
}

}  // namespace

DecisionMatrix::DecisionMatrix(int size, Agent fill) : size_(size) {
  if (size < 1) throw ValidationError("decision matrix size must be positive");
  cells_.assign(static_cast<std::size_t>(size) * size, static_cast<std::uint8_t>(fill));
}

void DecisionMatrix::set(State s, Agent a) {
  if (s.x < 1 || s.y < 1 || s.x > size_ || s.y > size_) {
    std::ostringstream msg;
    msg << "state " << s << " outside decision matrix of size " << size_;
    throw ValidationError(msg.str());
  }
  cells_[static_cast<std::size_t>(s.y - 1) * size_ + (s.x - 1)] = static_cast<std::uint8_t>(a);
}

DecisionMatrix DecisionMatrix::relabeled() const {
  DecisionMatrix out(size_, Agent::kOne);
  for (int y = 1; y <= size_; ++y)
    for (int x = 1; x <= size_; ++x) out.set({y, x}, other(at({x, y})));
  return out;
}

Policy Policy::max_weight(Agent tie_agent) { return Policy(MaxWeightRule{tie_agent}, "mw"); }

Policy Policy::tabular(DecisionMatrix matrix, std::string id) {
  if (matrix.size() < 1) throw ValidationError("empty decision matrix");
  return Policy(std::move(matrix), std::move(id));
}

Agent Policy::decide(State s, const NetworkParams& params) const {
  if (const auto* mw = std::get_if<MaxWeightRule>(&rule_)) return decide_mw(s, params, mw->tie_agent);
  return std::get<DecisionMatrix>(rule_).at(s);
}

Policy Policy::relabeled() const {
  if (const auto* mw = std::get_if<MaxWeightRule>(&rule_))
    return Policy(MaxWeightRule{other(mw->tie_agent)}, id_);
  return Policy(std::get<DecisionMatrix>(rule_).relabeled(), id_);
}

Agent decide_mw(State s, const NetworkParams& params, Agent tie_agent) {
  const double wx = s.x * params.p();
  const double wy = s.y * params.q();
  const double scale = wx > wy ? wx : wy;
  if (std::fabs(wx - wy) <= kTieTolerance * scale) return tie_agent;
  return wx > wy ? Agent::kOne : Agent::kTwo;
}

Agent decide_tabular(const Policy& policy, State s) {
  const DecisionMatrix* m = policy.matrix();
  if (m == nullptr) throw ValidationError("decide_tabular called on a non-tabular policy");
  return m->at(s);
}

DecisionMatrix tabulate(const Policy& policy, const NetworkParams& params, int size) {
  DecisionMatrix m(size, Agent::kOne);
  for (int y = 1; y <= size; ++y)
    for (int x = 1; x <= size; ++x) m.set({x, y}, policy.decide({x, y}, params));
  return m;
}

std::vector<State> check_causality(const Policy& policy, const NetworkParams& params, int bound) {
  if (bound < 2) throw ValidationError("causality scan bound must be >= 2");
  std::vector<State> violations;
  for (int y = 1; y <= bound; ++y) {
    for (int x = 1; x <= bound; ++x) {
      const State s{x, y};
      const Agent d = policy.decide(s, params);
      const State bumped = d == Agent::kOne ? State{x + 1, y} : State{x, y + 1};
      if (policy.decide(bumped, params) != d) violations.push_back(s);
    }
  }
  return violations;
}

int first_reachable_x(const Policy& policy, const NetworkParams& params, int y) {
  if (y < 1) throw ValidationError("first_reachable_x needs y >= 1");
  if (const auto* mw = policy.max_weight_rule()) return mw_first_reachable_x(params, mw->tie_agent, y);
  const DecisionMatrix& m = *policy.matrix();
  for (int x = 1; x <= m.size(); ++x)
    if (m.at({x, y}) == Agent::kOne) return x;
  std::ostringstream msg;
  msg << "boundary not found: policy never activates agent 1 on row y = " << y;
  throw SolverError(msg.str());
}

int first_reachable_y(const Policy& policy, const NetworkParams& params, int x) {
  if (x < 1) throw ValidationError("first_reachable_y needs x >= 1");
  if (const auto* mw = policy.max_weight_rule()) return mw_first_reachable_y(params, mw->tie_agent, x);
  const DecisionMatrix& m = *policy.matrix();
  for (int y = 1; y <= m.size(); ++y)
    if (m.at({x, y}) == Agent::kTwo) return y;
  return -1;
}

int boundary_delta(const Policy& policy, const NetworkParams& params, int y) {
  if (y < 2) throw ValidationError("boundary_delta needs y >= 2");
  return first_reachable_x(policy, params, y) - first_reachable_x(policy, params, y - 1) - 1;
}

}  // namespace aoi
