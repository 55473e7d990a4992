#include "trotter/operators.hpp"

#include "trotter/csv.hpp"
#include "trotter/errors.hpp"
#include "trotter/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

namespace trotter {

std::string to_string(Discretization d) {
  return d == Discretization::FiniteDifference ? "fd" : "spectral";
}

Discretization parse_discretization(const std::string& id) {
  if (id == "fd" || id == "finite-difference") return Discretization::FiniteDifference;
  if (id == "spectral" || id == "fourier") return Discretization::FourierSpectral;
  throw DomainError("unknown discretization '" + id + "'");
}

int fft_frequency(int j, int n) { return j < (n + 1) / 2 ? j : j - n; }

void require_dense_cap(int n) {
  if (n > kDenseCap) {
    throw ResourceCapError("dense form requested for n=" + std::to_string(n) +
                           " above the cap " + std::to_string(kDenseCap));
  }
}

namespace {

// Circulant matrix whose first column is c: M_{jk} = c_{(j-k) mod n}.
template <class M, class V>
M circulant(const V& c) {
  const int n = static_cast<int>(c.size());
  M m(n, n);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) m(j, k) = c[(j - k + n) % n];
  }
  return m;
}

// First column of F diag(symbol) F^dagger.
std::vector<Complex> circulant_column(std::span<const Complex> symbol) {
  const int n = static_cast<int>(symbol.size());
  std::vector<Complex> c(symbol.begin(), symbol.end());
  fft::backward(c, n);
  for (auto& x : c) x /= static_cast<double>(n);
  return c;
}

void apply_symbol(std::span<Complex> block, int n, auto&& symbol_at) {
  fft::forward(block, n);
  const std::size_t columns = block.size() / n;
  const double inv_n = 1.0 / n;
  for (std::size_t c = 0; c < columns; ++c) {
    Complex* col = block.data() + c * n;
    for (int j = 0; j < n; ++j) col[j] *= symbol_at(j) * inv_n;
  }
  fft::backward(block, n);
}

} // namespace

// --- KineticOperator -------------------------------------------------------

KineticOperator::KineticOperator(SpatialGrid grid, Discretization kind,
                                 std::vector<double> eigenvalues)
    : grid_(grid), kind_(kind), eigenvalues_(std::move(eigenvalues)),
      dense_(std::make_shared<detail::LazyDense<Eigen::MatrixXd>>()) {
  if (static_cast<int>(eigenvalues_.size()) != grid_.size()) {
    throw ConstructionError("eigenvalue count does not match grid size");
  }
}

double KineticOperator::norm() const {
  return *std::max_element(eigenvalues_.begin(), eigenvalues_.end());
}

const Eigen::MatrixXd& KineticOperator::dense() const {
  require_dense_cap(grid_.size());
  return dense_->get([this] {
    const int n = grid_.size();
    if (kind_ == Discretization::FiniteDifference) {
      // Exact stencil entries so that D1^T D1 reproduces this matrix bit for bit.
      const double s2 = grid_.scale() * grid_.scale();
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
      for (int k = 0; k < n; ++k) {
        m(k, k) = 2.0 * s2;
        m(k, (k + 1) % n) = -s2;
        m(k, (k + n - 1) % n) = -s2;
      }
      return m;
    }
    std::vector<Complex> symbol(eigenvalues_.begin(), eigenvalues_.end());
    const auto c = circulant_column(symbol);
    std::vector<double> re(n);
    for (int j = 0; j < n; ++j) re[j] = c[j].real();
    return circulant<Eigen::MatrixXd>(re);
  });
}

void KineticOperator::apply_inplace(std::span<Complex> block) const {
  apply_symbol(block, grid_.size(), [this](int j) { return Complex(eigenvalues_[j]); });
}

StateVector KineticOperator::apply(const StateVector& psi) const {
  require_same_grid(grid_, psi.grid());
  Eigen::VectorXcd out = psi.amplitudes();
  apply_inplace({out.data(), static_cast<std::size_t>(out.size())});
  return StateVector(grid_, std::move(out));
}

// --- PotentialOperator -----------------------------------------------------

PotentialOperator::PotentialOperator(SpatialGrid grid, Eigen::VectorXd values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw ConstructionError("potential value count does not match grid size");
  }
  if (!values_.allFinite()) throw ConstructionError("potential has non-finite values");
}

double PotentialOperator::norm() const { return values_.cwiseAbs().maxCoeff(); }

Eigen::MatrixXd PotentialOperator::dense() const {
  require_dense_cap(grid_.size());
  return values_.asDiagonal();
}

void PotentialOperator::apply_inplace(std::span<Complex> block) const {
  const int n = grid_.size();
  for (std::size_t i = 0; i < block.size(); ++i) block[i] *= values_[i % n];
}

StateVector PotentialOperator::apply(const StateVector& psi) const {
  require_same_grid(grid_, psi.grid());
  return StateVector(grid_, values_.cwiseProduct(psi.amplitudes()));
}

// --- DifferenceOperator ----------------------------------------------------

DifferenceOperator::DifferenceOperator(SpatialGrid grid, Discretization kind)
    : grid_(grid), kind_(kind),
      dense_(std::make_shared<detail::LazyDense<Eigen::MatrixXcd>>()) {
  const int n = grid_.size();
  const double s = grid_.scale();
  symbol_.resize(n);
  for (int j = 0; j < n; ++j) {
    if (kind_ == Discretization::FiniteDifference) {
      symbol_[j] = s * (std::polar(1.0, -2.0 * std::numbers::pi * j / n) - 1.0);
    } else {
      const double k = 2.0 * std::numbers::pi * fft_frequency(j, n) / grid_.length();
      symbol_[j] = Complex(0.0, k);
    }
  }
}

const Eigen::MatrixXcd& DifferenceOperator::dense() const {
  require_dense_cap(grid_.size());
  return dense_->get([this] {
    const int n = grid_.size();
    if (kind_ == Discretization::FiniteDifference) {
      const double s = grid_.scale();
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
      for (int k = 0; k < n; ++k) {
        m(k, k) = -s;
        m(k, (k + n - 1) % n) = s;
      }
      return m;
    }
    return circulant<Eigen::MatrixXcd>(circulant_column(symbol_));
  });
}

void DifferenceOperator::apply_inplace(std::span<Complex> block) const {
  const int n = grid_.size();
  if (kind_ == Discretization::FiniteDifference) {
    const double s = grid_.scale();
    const std::size_t columns = block.size() / n;
    for (std::size_t c = 0; c < columns; ++c) {
      Complex* v = block.data() + c * n;
      const Complex last = v[n - 1];
      for (int k = n - 1; k >= 1; --k) v[k] = s * (v[k - 1] - v[k]);
      v[0] = s * (last - v[0]);
    }
    return;
  }
  apply_symbol(block, n, [this](int j) { return symbol_[j]; });
}

StateVector DifferenceOperator::apply(const StateVector& psi) const {
  require_same_grid(grid_, psi.grid());
  Eigen::VectorXcd out = psi.amplitudes();
  apply_inplace({out.data(), static_cast<std::size_t>(out.size())});
  return StateVector(grid_, std::move(out));
}

// --- builders --------------------------------------------------------------

KineticOperator build_laplacian_fd(const SpatialGrid& grid) {
  const int n = grid.size();
  const double s = grid.scale();
  std::vector<double> lambda(n);
  for (int j = 0; j < n; ++j) {
    lambda[j] = 2.0 * s * s * (1.0 - std::cos(2.0 * std::numbers::pi * j / n));
  }
  lambda[0] = 0.0;
  return KineticOperator(grid, Discretization::FiniteDifference, std::move(lambda));
}

KineticOperator build_laplacian_spectral(const SpatialGrid& grid) {
  const int n = grid.size();
  if (n % 2 != 0) {
    throw ConstructionError("spectral Laplacian needs an even number of nodes, got " +
                            std::to_string(n));
  }
  std::vector<double> lambda(n);
  for (int j = 0; j < n; ++j) {
    const double k = 2.0 * std::numbers::pi * fft_frequency(j, n) / grid.length();
    lambda[j] = k * k;
  }
  return KineticOperator(grid, Discretization::FourierSpectral, std::move(lambda));
}

KineticOperator build_laplacian(const SpatialGrid& grid, Discretization kind) {
  return kind == Discretization::FiniteDifference ? build_laplacian_fd(grid)
                                                  : build_laplacian_spectral(grid);
}

PotentialOperator build_potential(const std::function<double(double)>& V,
                                  const SpatialGrid& grid) {
  Eigen::VectorXd v(grid.size());
  for (int k = 0; k < grid.size(); ++k) {
    v[k] = V(grid.node(k));
    if (!std::isfinite(v[k])) {
      throw ConstructionError("potential is non-finite at node " + std::to_string(k));
    }
  }
  return PotentialOperator(grid, std::move(v));
}

DifferenceOperator build_difference_d1(const SpatialGrid& grid) {
  return DifferenceOperator(grid, Discretization::FiniteDifference);
}

DifferenceOperator build_difference(const KineticOperator& kinetic) {
  return DifferenceOperator(kinetic.grid(), kinetic.discretization());
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXcd& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << format_double(m(r, c).real()) << ',' << format_double(m(r, c).imag());
    }
    out << '\n';
  }
}

} // namespace trotter
