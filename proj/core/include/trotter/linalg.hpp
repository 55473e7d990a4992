#pragma once

#include <Eigen/Dense>

#include <cstdint>

namespace trotter {

/// AB - BA.
Eigen::MatrixXcd commutator(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B);

/// [A, [B, C]]; nested(H1, H1, H2) and nested(H2, H2, H1) are the double
/// commutators that enter the second-order preconstants.
Eigen::MatrixXcd nested(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B,
                        const Eigen::MatrixXcd& C);

/// Largest singular value by power iteration on M^H M, stopping when the
/// relative change of the estimate drops below tol. Throws AccuracyError
/// after 1e5 iterations.
double operator_norm(const Eigen::MatrixXcd& M, double tol = 1e-8,
                     std::uint64_t seed = 0x5eed);

/// Largest singular value from a dense Hermitian eigensolve of M^H M.
double spectral_norm_exact(const Eigen::MatrixXcd& M);

/// sqrt(||M||_1 ||M||_inf), an upper bound on the 2-norm.
double one_inf_norm_bound(const Eigen::MatrixXcd& M);

/// ||U^H U - I||_F / sqrt(n).
double unitarity_defect(const Eigen::MatrixXcd& U);

} // namespace trotter
