#include "trotter/linalg.hpp"

#include "trotter/errors.hpp"

#include <cmath>
#include <random>

namespace trotter {

namespace {

void require_square_pair(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows()) {
    throw DomainError("commutator needs square matrices of equal size");
  }
}

Eigen::VectorXcd random_unit(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = {g(rng), g(rng)};
  return v.normalized();
}

constexpr long kMaxIterations = 100000;
constexpr int kRestarts = 3;

} // namespace

Eigen::MatrixXcd commutator(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
  require_square_pair(A, B);
  return A * B - B * A;
}

Eigen::MatrixXcd nested(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B,
                        const Eigen::MatrixXcd& C) {
  return commutator(A, commutator(B, C));
}

double operator_norm(const Eigen::MatrixXcd& M, double tol, std::uint64_t seed) {
  if (M.size() == 0 || M.isZero(0.0)) return 0.0;
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt <= kRestarts; ++attempt) {
    Eigen::VectorXcd v = random_unit(M.cols(), rng);
    double sigma2 = 0.0;
    bool stagnant = false;
    for (long it = 0; it < kMaxIterations; ++it) {
      const Eigen::VectorXcd w = M.adjoint() * (M * v);
      const double next = w.norm();
      if (next == 0.0) {
        // Start vector fell into the kernel; try another one.
        stagnant = true;
        break;
      }
      v = w / next;
      if (std::abs(next - sigma2) <= tol * next) return std::sqrt(next);
      sigma2 = next;
    }
    if (!stagnant) {
      throw AccuracyError("power iteration did not converge", std::sqrt(sigma2));
    }
  }
  throw AccuracyError("power iteration stagnated on every restart", 0.0);
}

double spectral_norm_exact(const Eigen::MatrixXcd& M) {
  if (M.size() == 0) return 0.0;
  const Eigen::MatrixXcd G = M.adjoint() * M;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double one_inf_norm_bound(const Eigen::MatrixXcd& M) {
  if (M.size() == 0) return 0.0;
  const double col = M.cwiseAbs().colwise().sum().maxCoeff();
  const double row = M.cwiseAbs().rowwise().sum().maxCoeff();
  return std::sqrt(col * row);
}

double unitarity_defect(const Eigen::MatrixXcd& U) {
  const auto n = U.rows();
  const Eigen::MatrixXcd D = U.adjoint() * U - Eigen::MatrixXcd::Identity(n, n);
  return D.norm() / std::sqrt(static_cast<double>(n));
}

} // namespace trotter
