#include "aoi/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "aoi/error.hpp"

namespace aoi {

double Grid::sum() const noexcept {
  double total = 0.0;
  for (double v : cells_) total += v;
  return total;
}

void Grid::scale(double factor) noexcept {
  for (double& v : cells_) v *= factor;
}

Grid Grid::transposed() const {
  Grid out(size_);
  for (int x = 1; x <= size_; ++x)
    for (int y = 1; y <= size_; ++y) out(y, x) = (*this)(x, y);
  return out;
}

Distribution absolute_difference(const Distribution& a, const Distribution& b) {
  const int n = std::min(a.y_hat(), b.y_hat());
  Distribution out = a;
  out.grid = Grid(n);
  out.normalized = false;
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y) out.grid(x, y) = std::fabs(a.grid(x, y) - b.grid(x, y));
  return out;
}

double max_abs_difference(const Grid& a, const Grid& b, int window) {
  if (window > a.size() || window > b.size()) throw ValidationError("comparison window exceeds grid");
  double worst = 0.0;
  for (int x = 1; x <= window; ++x)
    for (int y = 1; y <= window; ++y) worst = std::max(worst, std::fabs(a(x, y) - b(x, y)));
  return worst;
}

Grid renormalized_window(const Grid& g, int window) {
  if (window > g.size()) throw ValidationError("window exceeds grid");
  Grid out(window);
  for (int x = 1; x <= window; ++x)
    for (int y = 1; y <= window; ++y) out(x, y) = g(x, y);
  const double total = out.sum();
  if (total > 0.0) out.scale(1.0 / total);
  return out;
}

}  // namespace aoi
