#pragma once

#include <cstdint>
#include <compare>
#include <ostream>

namespace aoi {

enum class Agent : std::uint8_t { kOne = 1, kTwo = 2 };

constexpr Agent other(Agent a) noexcept {
  return a == Agent::kOne ? Agent::kTwo : Agent::kOne;
}

constexpr int index_of(Agent a) noexcept { return static_cast<int>(a); }

/// Network state: AoI of each agent's last update as seen by the other
/// agent, in time slots. Both components are >= 1.
struct State {
  int x = 1;
  int y = 2;

  friend constexpr auto operator<=>(const State&, const State&) = default;
};

std::ostream& operator<<(std::ostream& os, const State& s);

/// Per-agent transmission success probabilities, both in (0, 1].
class NetworkParams {
 public:
  /// Throws ValidationError unless 0 < p <= 1 and 0 < q <= 1.
  NetworkParams(double p, double q);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  double p_fail() const noexcept { return 1.0 - p_; }
  double q_fail() const noexcept { return 1.0 - q_; }

  double success(Agent a) const noexcept { return a == Agent::kOne ? p_ : q_; }
  double failure(Agent a) const noexcept { return 1.0 - success(a); }

  /// Same network with the agent labels exchanged.
  NetworkParams swapped() const noexcept { return NetworkParams(q_, p_, Unchecked{}); }

  /// max(1 - p, 1 - q); strictly below 1 for valid parameters.
  double worst_failure() const noexcept { return 1.0 - (p_ < q_ ? p_ : q_); }

  friend bool operator==(const NetworkParams&, const NetworkParams&) = default;

 private:
  struct Unchecked {};
  NetworkParams(double p, double q, Unchecked) noexcept : p_(p), q_(q) {}

  double p_;
  double q_;
};

/// One slot of the AoI dynamics: the chosen agent resets to 1 on success,
/// every other component grows by one.
constexpr State evolve_state(State s, Agent chosen, bool success) noexcept {
  const bool reset_x = chosen == Agent::kOne && success;
  const bool reset_y = chosen == Agent::kTwo && success;
  return State{reset_x ? 1 : s.x + 1, reset_y ? 1 : s.y + 1};
}

}  // namespace aoi
