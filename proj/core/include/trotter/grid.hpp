#pragma once

#include <vector>

namespace trotter {

/// n equidistant nodes on the periodic interval [x_lo, x_hi).
class SpatialGrid {
public:
  SpatialGrid(int n, double x_lo, double x_hi);

  int size() const noexcept { return n_; }
  double x_lo() const noexcept { return x_lo_; }
  double x_hi() const noexcept { return x_hi_; }
  double length() const noexcept { return x_hi_ - x_lo_; }
  double spacing() const noexcept { return length() / n_; }
  /// Inverse spacing n / length; the FD stencils scale with powers of it.
  double scale() const noexcept { return n_ / length(); }
  double node(int k) const noexcept { return x_lo_ + k * spacing(); }
  std::vector<double> nodes() const;

  bool operator==(const SpatialGrid&) const = default;

private:
  int n_;
  double x_lo_;
  double x_hi_;
};

/// The [-pi, pi) grid used by the modulated-mass experiments.
SpatialGrid periodic_pi_grid(int n);

} // namespace trotter
