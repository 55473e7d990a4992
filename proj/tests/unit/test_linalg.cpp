#include <trotter/errors.hpp>
#include <trotter/linalg.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace trotter;
using oracle::cd;
using oracle::Mat;

namespace {

Mat random_matrix(int n, std::uint64_t seed) {
  Mat M(n, n);
  for (int j = 0; j < n; ++j) M.col(j) = oracle::random_vector(n, seed * 101 + j);
  return M;
}

} // namespace

TEST(Linalg, CommutatorIdentities) {
  const Mat A = random_matrix(6, 1), B = random_matrix(6, 2), C = random_matrix(6, 3);
  EXPECT_LE((commutator(A, B) + commutator(B, A)).norm(), 1e-12);
  EXPECT_LE(commutator(A, A).norm(), 1e-12);
  EXPECT_LE((nested(A, B, C) - (A * (B * C - C * B) - (B * C - C * B) * A)).norm(), 1e-11);
  // Jacobi identity.
  EXPECT_LE((nested(A, B, C) + nested(B, C, A) + nested(C, A, B)).norm(), 1e-10);
}

TEST(Linalg, OperatorNormAgreesWithSvd) {
  for (int n : {1, 2, 5, 16, 40}) {
    const Mat M = random_matrix(n, n);
    const double want = oracle::two_norm(M);
    EXPECT_NEAR(spectral_norm_exact(M), want, 1e-10 * want);
    EXPECT_NEAR(operator_norm(M, 1e-12), want, 1e-6 * want);
    EXPECT_GE(one_inf_norm_bound(M), want * (1 - 1e-12));
  }
  EXPECT_EQ(operator_norm(Mat::Zero(4, 4)), 0.0);
}

TEST(Linalg, OperatorNormDegenerateTopSingularValue) {
  Mat M = Mat::Zero(4, 4);
  M(0, 0) = 3.0;
  M(1, 1) = cd(0, -3.0);
  M(2, 2) = 1.0;
  EXPECT_NEAR(operator_norm(M), 3.0, 1e-7);
}

TEST(Linalg, UnitarityDefect) {
  const Mat U = oracle::expm_hermitian(random_matrix(5, 9) + random_matrix(5, 9).adjoint(), 0.7);
  EXPECT_LE(unitarity_defect(U), 1e-13);
  EXPECT_NEAR(unitarity_defect(2.0 * Mat::Identity(4, 4)), 3.0, 1e-14);
}

TEST(Linalg, SmallExamples) {
  const Mat H1 = oracle::fd_laplacian(4, 1.0);
  EXPECT_NEAR(operator_norm(H1), 64.0, 1e-6);
  EXPECT_NEAR(one_inf_norm_bound(H1), 64.0, 1e-12);
  EXPECT_NEAR(one_inf_norm_bound(Mat::Identity(3, 3)), 1.0, 0.0);
  Eigen::VectorXcd d(4);
  d << 2, 1, 0, 1;
  EXPECT_NEAR(operator_norm(d.asDiagonal().toDenseMatrix()), 2.0, 1e-7);
  EXPECT_EQ(commutator(d.asDiagonal().toDenseMatrix(), d.asDiagonal().toDenseMatrix()).norm(), 0.0);

  // n = 3 on [0, 1] with V = (1, 2, 4).
  const Mat K3 = oracle::fd_laplacian(3, 1.0);
  Eigen::VectorXcd v(3);
  v << 1, 2, 4;
  const Mat C = commutator(K3, v.asDiagonal().toDenseMatrix());
  Mat want(3, 3);
  want << 0, -1, -3, 1, 0, -2, 3, 2, 0;
  EXPECT_LE((C - 9.0 * want).norm(), 1e-12);
  EXPECT_NEAR(one_inf_norm_bound(C), 45.0, 1e-12);
  EXPECT_GE(one_inf_norm_bound(C), oracle::two_norm(C));
}
