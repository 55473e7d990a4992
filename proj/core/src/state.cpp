#include "trotter/state.hpp"

#include "trotter/errors.hpp"

#include <cmath>

namespace trotter {

StateVector::StateVector(SpatialGrid grid, Eigen::VectorXcd amplitudes)
    : grid_(grid), psi_(std::move(amplitudes)) {
  if (psi_.size() != grid_.size()) {
    throw ConstructionError("state has " + std::to_string(psi_.size()) +
                            " amplitudes for a grid of " + std::to_string(grid_.size()));
  }
}

StateVector StateVector::zeros(const SpatialGrid& grid) {
  return StateVector(grid, Eigen::VectorXcd::Zero(grid.size()));
}

StateVector StateVector::ones(const SpatialGrid& grid) {
  return StateVector(grid, Eigen::VectorXcd::Ones(grid.size()));
}

StateVector StateVector::basis(const SpatialGrid& grid, int k) {
  if (k < 0 || k >= grid.size()) throw DomainError("basis index out of range");
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(grid.size());
  e[k] = 1.0;
  return StateVector(grid, std::move(e));
}

double StateVector::rescaled_norm() const {
  return psi_.norm() / std::sqrt(static_cast<double>(grid_.size()));
}

double norm2(const StateVector& v) { return v.norm(); }

double rescaled_norm(const StateVector& v) { return v.rescaled_norm(); }

double rescaled_distance(const StateVector& a, const StateVector& b) {
  require_same_grid(a.grid(), b.grid());
  return (a.amplitudes() - b.amplitudes()).norm() / std::sqrt(static_cast<double>(a.size()));
}

StateVector sample_function(const std::function<Complex(double)>& g,
                            const SpatialGrid& grid) {
  Eigen::VectorXcd psi(grid.size());
  for (int k = 0; k < grid.size(); ++k) {
    const Complex value = g(grid.node(k));
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
      throw ConstructionError("non-finite sample at node " + std::to_string(k));
    }
    psi[k] = value;
  }
  return StateVector(grid, std::move(psi));
}

void require_same_grid(const SpatialGrid& a, const SpatialGrid& b) {
  if (!(a == b)) throw GridMismatch("objects live on different grids");
}

} // namespace trotter
