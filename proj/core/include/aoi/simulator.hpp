#pragma once

#include <cstdint>

#include "aoi/distribution.hpp"
#include "aoi/policy.hpp"

namespace aoi {

struct SimResult {
  /// Visit frequencies on [1, y_hat]^2; visits outside the grid are counted
  /// in empirical.tail_mass, so the grid sums to 1 - tail_mass.
  Distribution empirical;
  double avg_aoi = 0.0;  ///< mean of x + y over the recorded slots
  std::uint64_t steps = 0;
  std::uint64_t seed = 0;
};

/// Seeded Monte-Carlo run of the AoI chain, starting in (1, 2). The first
/// `burn_in` slots are discarded, the next `steps` slots are recorded.
///
/// Generator: std::mt19937_64 seeded with `seed`; a Bernoulli(s) draw is
/// (u >> 11) * 2^-53 < s with u the next 64-bit output. Both are fully
/// specified by the standard, so results are bit-identical across builds.
SimResult simulate(const Policy& policy, const NetworkParams& params, std::uint64_t steps, std::uint64_t seed,
                   int y_hat, std::uint64_t burn_in = 1000);

}  // namespace aoi
