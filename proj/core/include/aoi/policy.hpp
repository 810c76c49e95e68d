#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "aoi/state.hpp"

namespace aoi {

/// MaxWeight: activate agent 1 whenever x * p >= y * q. Exact ties go to
/// `tie_agent`, which is agent 1 in the natural labeling and flips when the
/// solver relabels agents.
struct MaxWeightRule {
  Agent tie_agent = Agent::kOne;
};

/// Square decision matrix over states (x, y) in [1, N]^2. States outside
/// the range are clamped componentwise before the lookup.
class DecisionMatrix {
 public:
  DecisionMatrix() = default;
  /// All entries set to `fill`. Throws ValidationError if size < 1.
  DecisionMatrix(int size, Agent fill);

  int size() const noexcept { return size_; }

  Agent at(State s) const noexcept {
    const int x = s.x < size_ ? s.x : size_;
    const int y = s.y < size_ ? s.y : size_;
    return static_cast<Agent>(cells_[static_cast<std::size_t>(y - 1) * size_ + (x - 1)]);
  }
  /// In-range write; throws ValidationError outside [1, N]^2.
  void set(State s, Agent a);

  /// Entries are stored row by row: row k is the slice y = k.
  const std::vector<std::uint8_t>& cells() const noexcept { return cells_; }

  /// Swap the roles of the two agents: transpose and exchange labels.
  DecisionMatrix relabeled() const;

  friend bool operator==(const DecisionMatrix&, const DecisionMatrix&) = default;

 private:
  int size_ = 0;
  std::vector<std::uint8_t> cells_;
};

/// A stationary deterministic scheduling policy.
class Policy {
 public:
  static Policy max_weight(Agent tie_agent = Agent::kOne);
  static Policy tabular(DecisionMatrix matrix, std::string id = "tabular");

  Agent decide(State s, const NetworkParams& params) const;

  bool is_max_weight() const noexcept { return std::holds_alternative<MaxWeightRule>(rule_); }
  /// nullptr for MaxWeight.
  const DecisionMatrix* matrix() const noexcept { return std::get_if<DecisionMatrix>(&rule_); }
  const MaxWeightRule* max_weight_rule() const noexcept { return std::get_if<MaxWeightRule>(&rule_); }

  const std::string& id() const noexcept { return id_; }
  void set_id(std::string id) { id_ = std::move(id); }

  /// The same policy seen with agent labels exchanged.
  Policy relabeled() const;

 private:
  Policy(std::variant<MaxWeightRule, DecisionMatrix> rule, std::string id)
      : rule_(std::move(rule)), id_(std::move(id)) {}

  std::variant<MaxWeightRule, DecisionMatrix> rule_;
  std::string id_;
};

Agent decide_mw(State s, const NetworkParams& params, Agent tie_agent = Agent::kOne);
Agent decide_tabular(const Policy& policy, State s);

/// Tabulate any policy on [1, size]^2.
DecisionMatrix tabulate(const Policy& policy, const NetworkParams& params, int size);

/// States a in [1, bound]^2 with d(a) = i but d(a + e_i) != i.
std::vector<State> check_causality(const Policy& policy, const NetworkParams& params, int bound);

/// Smallest x with decide((x, y)) = agent 1. Throws SolverError
/// ("boundary not found") if a tabular policy never picks agent 1 on row y.
int first_reachable_x(const Policy& policy, const NetworkParams& params, int y);

/// Smallest y with decide((x, y)) = agent 2; -1 when a tabular column
/// never picks agent 2.
int first_reachable_y(const Policy& policy, const NetworkParams& params, int x);

/// x'(y) - x'(y - 1) - 1, for y >= 2.
int boundary_delta(const Policy& policy, const NetworkParams& params, int y);

}  // namespace aoi
