#pragma once

#include "trotter/grid.hpp"
#include "trotter/state.hpp"

#include <Eigen/Dense>

#include <functional>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

namespace trotter {

/// Largest n for which dense operator forms may be materialised.
inline constexpr int kDenseCap = 4096;

enum class Discretization { FiniteDifference, FourierSpectral };

std::string to_string(Discretization d);
/// Accepts "fd" / "finite-difference" and "spectral" / "fourier".
Discretization parse_discretization(const std::string& id);

namespace detail {
template <class M>
class LazyDense {
public:
  template <class Build>
  const M& get(Build&& build) const {
    std::call_once(once_, [&] { value_ = build(); });
    return value_;
  }

private:
  mutable std::once_flag once_;
  mutable M value_;
};
} // namespace detail

/// Discretised -Laplacian on a periodic grid. Circulant, so it is diagonal
/// in the Fourier basis; eigenvalues are stored in FFT frequency order.
class KineticOperator {
public:
  KineticOperator(SpatialGrid grid, Discretization kind, std::vector<double> eigenvalues);

  const SpatialGrid& grid() const noexcept { return grid_; }
  Discretization discretization() const noexcept { return kind_; }
  std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }
  /// Operator 2-norm (the largest eigenvalue).
  double norm() const;

  /// Dense real-symmetric matrix, built on first use. Throws
  /// ResourceCapError above kDenseCap.
  const Eigen::MatrixXd& dense() const;

  /// H1 applied to each length-n column of a contiguous block, in place.
  void apply_inplace(std::span<Complex> block) const;
  StateVector apply(const StateVector& psi) const;

private:
  SpatialGrid grid_;
  Discretization kind_;
  std::vector<double> eigenvalues_;
  std::shared_ptr<detail::LazyDense<Eigen::MatrixXd>> dense_;
};

/// Diagonal potential H2 = diag(V(x_k)).
class PotentialOperator {
public:
  PotentialOperator(SpatialGrid grid, Eigen::VectorXd values);

  const SpatialGrid& grid() const noexcept { return grid_; }
  const Eigen::VectorXd& values() const noexcept { return values_; }
  /// max_k |v_k|.
  double norm() const;
  Eigen::MatrixXd dense() const;

  void apply_inplace(std::span<Complex> block) const;
  StateVector apply(const StateVector& psi) const;

private:
  SpatialGrid grid_;
  Eigen::VectorXd values_;
};

/// First-difference factor D1 with D1^dagger D1 = H1. For the finite
/// difference Laplacian this is the scaled backward difference
/// (D1 v)_k = s (v_{k-1} - v_k); for the spectral Laplacian it is the
/// spectral derivative with symbol i k.
class DifferenceOperator {
public:
  DifferenceOperator(SpatialGrid grid, Discretization kind);

  const SpatialGrid& grid() const noexcept { return grid_; }
  Discretization discretization() const noexcept { return kind_; }

  const Eigen::MatrixXcd& dense() const;
  void apply_inplace(std::span<Complex> block) const;
  StateVector apply(const StateVector& psi) const;

private:
  SpatialGrid grid_;
  Discretization kind_;
  std::vector<Complex> symbol_;
  std::shared_ptr<detail::LazyDense<Eigen::MatrixXcd>> dense_;
};

KineticOperator build_laplacian_fd(const SpatialGrid& grid);
/// Requires an even number of nodes.
KineticOperator build_laplacian_spectral(const SpatialGrid& grid);
KineticOperator build_laplacian(const SpatialGrid& grid, Discretization kind);

/// Throws ConstructionError if V is non-finite at a node.
PotentialOperator build_potential(const std::function<double(double)>& V,
                                  const SpatialGrid& grid);

DifferenceOperator build_difference_d1(const SpatialGrid& grid);
/// The factor matching `kinetic`'s discretisation.
DifferenceOperator build_difference(const KineticOperator& kinetic);

/// FFT frequency index m_j in {0, 1, ..., n/2-1, -n/2, ..., -1}.
int fft_frequency(int j, int n);

/// Dense matrix as CSV: one line per row, each cell written as "re,im".
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXcd& m);

void require_dense_cap(int n);

} // namespace trotter
