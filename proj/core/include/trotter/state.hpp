#pragma once

#include "trotter/grid.hpp"

#include <Eigen/Dense>

#include <complex>
#include <functional>

namespace trotter {

using Complex = std::complex<double>;

/// Complex amplitudes psi_k, one per grid node.
class StateVector {
public:
  StateVector(SpatialGrid grid, Eigen::VectorXcd amplitudes);

  static StateVector zeros(const SpatialGrid& grid);
  static StateVector ones(const SpatialGrid& grid);
  /// Unit vector e_k.
  static StateVector basis(const SpatialGrid& grid, int k);

  const SpatialGrid& grid() const noexcept { return grid_; }
  int size() const noexcept { return grid_.size(); }
  const Eigen::VectorXcd& amplitudes() const noexcept { return psi_; }
  Eigen::VectorXcd& amplitudes() noexcept { return psi_; }
  Complex operator[](int k) const { return psi_[k]; }

  /// Euclidean 2-norm.
  double norm() const { return psi_.norm(); }
  /// ||psi|| / sqrt(n), the discrete analogue of the L2 norm on the cell.
  double rescaled_norm() const;

private:
  SpatialGrid grid_;
  Eigen::VectorXcd psi_;
};

double norm2(const StateVector& v);
double rescaled_norm(const StateVector& v);

/// ||a - b||_star; throws GridMismatch for different grids.
double rescaled_distance(const StateVector& a, const StateVector& b);

/// psi_k = g(x_k); throws ConstructionError on a non-finite sample.
StateVector sample_function(const std::function<Complex(double)>& g,
                            const SpatialGrid& grid);

void require_same_grid(const SpatialGrid& a, const SpatialGrid& b);

} // namespace trotter
