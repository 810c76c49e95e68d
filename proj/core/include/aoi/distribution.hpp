#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "aoi/state.hpp"

namespace aoi {

/// Square array of reals indexed by states (x, y) in [1, size]^2.
class Grid {
 public:
  Grid() = default;
  explicit Grid(int size) : size_(size), cells_(static_cast<std::size_t>(size) * size, 0.0) {}

  int size() const noexcept { return size_; }
  bool contains(State s) const noexcept { return s.x >= 1 && s.y >= 1 && s.x <= size_ && s.y <= size_; }

  double& operator()(int x, int y) noexcept { return cells_[offset(x, y)]; }
  double operator()(int x, int y) const noexcept { return cells_[offset(x, y)]; }
  double& operator[](State s) noexcept { return (*this)(s.x, s.y); }
  double operator[](State s) const noexcept { return (*this)(s.x, s.y); }

  /// Column-major by x: the values (x, 1..size) are contiguous.
  std::span<const double> column(int x) const noexcept {
    return {cells_.data() + offset(x, 1), static_cast<std::size_t>(size_)};
  }
  std::span<const double> cells() const noexcept { return cells_; }
  std::span<double> cells() noexcept { return cells_; }

  double sum() const noexcept;
  void scale(double factor) noexcept;
  Grid transposed() const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t offset(int x, int y) const noexcept {
    return static_cast<std::size_t>(x - 1) * size_ + static_cast<std::size_t>(y - 1);
  }

  int size_ = 0;
  std::vector<double> cells_;
};

/// A (possibly truncated) stationary distribution over the AoI state space.
struct Distribution {
  Grid grid;
  NetworkParams params{1.0, 1.0};
  std::string policy_id;
  bool normalized = false;
  /// Upper estimate of the probability outside the grid.
  double tail_mass = 0.0;
  /// The constant A with f = A * f_A, where f_A is the unnormalized grid.
  double norm_constant = 1.0;

  int y_hat() const noexcept { return grid.size(); }
};

/// Entrywise |a - b| on the common window; the result keeps a's metadata.
Distribution absolute_difference(const Distribution& a, const Distribution& b);

/// Largest entrywise |a - b| over [1, window]^2.
double max_abs_difference(const Grid& a, const Grid& b, int window);

/// Copy of [1, window]^2, rescaled to sum to one.
Grid renormalized_window(const Grid& g, int window);

}  // namespace aoi
