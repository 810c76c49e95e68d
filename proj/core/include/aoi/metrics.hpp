#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "aoi/distribution.hpp"

namespace aoi {

struct AoiEstimate {
  double value = 0.0;
  /// Rough size of the contribution missing from outside the grid:
  /// tail_mass * (2 y_hat + 2 / (1 - r)), r = max failure probability.
  double truncation_bound = 0.0;
};

/// E[x + y]. Throws ValidationError for an unnormalized distribution.
AoiEstimate average_aoi(const Distribution& dist);

enum class Component { kFirst, kSecond, kTotal };

/// E[g^k] with g = x, y, or x + y.
double moment(const Distribution& dist, int k, Component which);

/// 100 (avg_mw - avg_op) / avg_mw. Throws ValidationError if the two
/// distributions were computed for different parameters.
double performance_gain(const Distribution& dist_mw, const Distribution& dist_op);

struct SweepSpec {
  std::vector<double> p_values;
  std::vector<double> q_values;
  int y_hat = 1024;
  int n_trunc = 256;
  bool include_optimal = true;
  unsigned threads = 1;
  double tol = 1e-9;
  int max_iter = 200;
};

struct SweepRow {
  double p = 0.0;
  double q = 0.0;
  double avg_mw = 0.0;
  double avg_op = 0.0;  ///< NaN when the optimal policy is not requested
  double gain_percent = 0.0;
  std::string error;  ///< empty on success
};

struct SweepTable {
  std::vector<double> p_values;
  std::vector<double> q_values;
  /// p-major: rows[i * q_values.size() + j] is (p_values[i], q_values[j]).
  std::vector<SweepRow> rows;
};

/// Solves MaxWeight (and, if requested, the optimal policy) for every cell.
/// Cells run on up to `threads` workers; per-cell failures are stored in
/// the row. Output does not depend on the number of workers.
SweepTable sweep(const SweepSpec& spec);

/// Header "p,q,avg_mw,avg_op,gain_percent".
void write_sweep_csv(std::ostream& out, const SweepTable& table);
/// Grid layout (p, q, gain) for surface plots.
void write_sweep_surface(std::ostream& out, const SweepTable& table, const std::vector<std::string>& header = {});

}  // namespace aoi
