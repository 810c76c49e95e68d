#include "aoi/simulator.hpp"

#include <random>
#include <vector>

#include "aoi/error.hpp"

namespace aoi {

SimResult simulate(const Policy& policy, const NetworkParams& params, std::uint64_t steps, std::uint64_t seed,
                   int y_hat, std::uint64_t burn_in) {
  if (steps < 1) throw ValidationError("simulation needs at least one step");
  if (y_hat < 1) throw ValidationError("simulation grid size must be positive");

  std::mt19937_64 rng(seed);
  auto bernoulli = [&rng](double success) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return u < success;
  };

  State s{1, 2};
  for (std::uint64_t t = 0; t < burn_in; ++t) {
    const Agent a = policy.decide(s, params);
    s = evolve_state(s, a, bernoulli(params.success(a)));
  }

  std::vector<std::uint64_t> counts(static_cast<std::size_t>(y_hat) * y_hat, 0);
  std::uint64_t overflow = 0;
  // Sums of x + y stay far below 2^53 for any feasible run length.
  std::uint64_t aoi_sum = 0;
  for (std::uint64_t t = 0; t < steps; ++t) {
    aoi_sum += static_cast<std::uint64_t>(s.x) + static_cast<std::uint64_t>(s.y);
    if (s.x <= y_hat && s.y <= y_hat) {
      ++counts[static_cast<std::size_t>(s.x - 1) * y_hat + static_cast<std::size_t>(s.y - 1)];
    } else {
      ++overflow;
    }
    const Agent a = policy.decide(s, params);
    s = evolve_state(s, a, bernoulli(params.success(a)));
  }

  SimResult out;
  out.steps = steps;
  out.seed = seed;
  out.avg_aoi = static_cast<double>(aoi_sum) / static_cast<double>(steps);
  out.empirical.grid = Grid(y_hat);
  out.empirical.params = params;
  out.empirical.policy_id = policy.id();
  out.empirical.normalized = true;
  out.empirical.norm_constant = 1.0 / static_cast<double>(steps);
  out.empirical.tail_mass = static_cast<double>(overflow) / static_cast<double>(steps);
  auto cells = out.empirical.grid.cells();
  for (std::size_t i = 0; i < counts.size(); ++i)
    cells[i] = static_cast<double>(counts[i]) / static_cast<double>(steps);
  return out;
}

}  // namespace aoi
