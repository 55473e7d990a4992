#pragma once

#include "trotter/operators.hpp"
#include "trotter/propagators.hpp"
#include "trotter/state.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace trotter {

// Dense Hamiltonian pieces as complex matrices.
Eigen::MatrixXcd dense_h1(const KineticOperator& kinetic);
Eigen::MatrixXcd dense_h2(const PotentialOperator& potential);

/// [H1, H2] for the finite-difference Laplacian from the tridiagonal closed
/// form: entries s^2 (V_k - V_{k+1}) above and s^2 (V_k - V_{k-1}) below the
/// diagonal, cyclically.
Eigen::MatrixXcd commutator_h1h2_fd(const SpatialGrid& grid, const Eigen::VectorXd& v);

/// [H1, [H1, H2]] for the finite-difference Laplacian, written through the
/// cyclic forward differences V^(2)_k: -2 V^(2)_k on the diagonal at k+1 and
/// V^(2)_k at the (k, k+2), (k+2, k) offsets.
Eigen::MatrixXcd nested_h1h1h2_fd(const SpatialGrid& grid, const Eigen::VectorXd& v);

/// Matrix-free commutator actions.
StateVector apply_h1(const KineticOperator& kinetic, const StateVector& psi);
StateVector apply_commutator_h1h2(const KineticOperator& kinetic,
                                  const PotentialOperator& potential,
                                  const StateVector& psi);
StateVector apply_nested_h1h1h2(const KineticOperator& kinetic,
                                const PotentialOperator& potential,
                                const StateVector& psi);
StateVector apply_nested_h2h2h1(const KineticOperator& kinetic,
                                const PotentialOperator& potential,
                                const StateVector& psi);

/// The bracketed factor of the vector-norm error estimate. The constant in
/// front of it is not known, so `bound_factor` is only meaningful up to a
/// scheme-independent multiple.
struct VectorBoundReport {
  Scheme scheme;
  double T;
  long L;
  double sup_h1_psi;  ///< sup over snapshots of ||H1 psi(t)||_star
  double psi0_norm;   ///< ||psi(0)||_star
  double bracket;
  double bound_factor;
  bool constant_known = false;
};

VectorBoundReport vector_bound_report(Scheme scheme,
                                      const std::vector<Snapshot>& trajectory,
                                      const KineticOperator& kinetic, double T, long L);

struct AssumptionConstants {
  double C1 = 0.0; ///< max ||[H1,H2]v|| / (||D1 v|| + ||v||)
  double C2 = 0.0; ///< max ||[H1,[H1,H2]]v|| / (||H1 v|| + ||v||)
  std::size_t sample_count = 0;
  std::string samples;
};

/// Smooth modes cos(kx) for k = 0..4 and sin(kx) for k = 1..5, `random_count`
/// seeded Gaussian vectors, and the ten highest-frequency Fourier modes; all
/// normalised to unit rescaled norm. The default gives 50 vectors.
std::vector<StateVector> assumption_samples(const SpatialGrid& grid, std::uint64_t seed,
                                            int random_count = 30);

AssumptionConstants estimate_assumption_constants(const KineticOperator& kinetic,
                                                  const PotentialOperator& potential,
                                                  const DifferenceOperator& d1,
                                                  const std::vector<StateVector>& samples);

struct ExchangeReport {
  double xi;
  double xi_cap;     ///< 1 / (2 (C1 + ||H2||))
  double max_ratio;  ///< max ||H1 e^{i xi H2} v|| / (||H1 v|| + ||v||)
  std::size_t sample_count;
  bool passed;       ///< max_ratio <= 2
};

/// Throws PreconditionError when (C1 + ||H2||) |xi| > 1/2.
ExchangeReport check_exchange_bound(const KineticOperator& kinetic,
                                    const PotentialOperator& potential, double C1,
                                    double xi, const std::vector<StateVector>& samples);

struct ErrorRepresentationCheck {
  int quad_points;
  double residual;        ///< ||representation - (U_g1 - U_ref)||_F
  double difference_norm; ///< ||U_g1 - U_ref||_F
  double representation_norm;
};

/// The first-order generalised step error written as
///   U_g1(h) - U(h) = int_0^h U(h,s) f1(s) [int_0^s f2(r) e^{-iF2(r)H2} [H1,H2]
///                    e^{iF2(r)H2} dr] e^{-iF2(s)H2} e^{-iF1(s)H1} ds,
/// with F the antiderivative of f from 0, evaluated by nested Gauss-Legendre
/// and compared against the dense reference. Needs n <= 64 and h <= 0.1.
ErrorRepresentationCheck verify_error_representation_g1(const ControlPair& pair,
                                                        const KineticOperator& kinetic,
                                                        const PotentialOperator& potential,
                                                        double h, int quad_points);

/// Doubles the rule from `start_points` until the residual changes by less
/// than 10% (or max_points is reached); returns every evaluated level.
std::vector<ErrorRepresentationCheck>
verify_error_representation_g1_adaptive(const ControlPair& pair,
                                        const KineticOperator& kinetic,
                                        const PotentialOperator& potential, double h,
                                        int start_points = 4, int max_points = 64);

/// g(x, k) returns the k-th derivative of g, k = 0..4.
using DifferentiableFn = std::function<double(double, int)>;

struct TruncationCheck {
  double error; ///< |central difference - g''(x)|
  double bound; ///< sup |g''''| / (3 s^2)
  bool within_bound;
};

/// Central three-point stencil at node k against the exact second
/// derivative. The stencil reaches x +- 1/s, so g need not be periodic.
TruncationCheck fd_truncation_error(const DifferentiableFn& g, const SpatialGrid& grid,
                                    int k);

} // namespace trotter
