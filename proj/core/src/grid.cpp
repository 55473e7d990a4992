#include "trotter/grid.hpp"

#include "trotter/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace trotter {

SpatialGrid::SpatialGrid(int n, double x_lo, double x_hi)
    : n_(n), x_lo_(x_lo), x_hi_(x_hi) {
  if (n < 3) throw ConstructionError("grid needs at least 3 nodes, got " + std::to_string(n));
  if (!std::isfinite(x_lo) || !std::isfinite(x_hi) || !(x_hi > x_lo)) {
    throw ConstructionError("grid interval must satisfy x_lo < x_hi");
  }
}

std::vector<double> SpatialGrid::nodes() const {
  std::vector<double> x(n_);
  for (int k = 0; k < n_; ++k) x[k] = node(k);
  return x;
}

SpatialGrid periodic_pi_grid(int n) {
  return SpatialGrid(n, -std::numbers::pi, std::numbers::pi);
}

} // namespace trotter
