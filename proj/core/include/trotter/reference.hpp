#pragma once

#include "trotter/propagators.hpp"

#include <Eigen/Dense>

#include <vector>

namespace trotter {

/// Self-converged G2 evolution standing in for the exact time-ordered
/// propagator.
///
/// The step count starts at `initial_steps` and doubles. G2 is symmetric, so
/// its error expands in even powers of h; with `extrapolation_depth` > 0 the
/// doubling ladder is Richardson-extrapolated in h^2 and the convergence test
/// is applied to successive extrapolated values. Depth 0 gives plain doubling.
struct ReferenceOptions {
  double tol = 1e-11;
  long initial_steps = 8;
  long max_steps = 1L << 24;
  int extrapolation_depth = 3;
};

struct ReferenceLevel {
  long steps;
  /// Distance between plain G2 at `steps` and at `steps / 2`.
  double raw_difference;
  /// Distance between successive accepted estimates.
  double difference;
};

struct ReferenceReport {
  long steps = 0;
  double achieved = 0.0;
  std::vector<ReferenceLevel> levels;
};

/// Converged U(t1, t0) applied to psi0. The convergence measure is the
/// rescaled norm.
StateVector reference_evolve(const ControlPair& pair, const KineticOperator& kinetic,
                             const PotentialOperator& potential, double T, double tol,
                             const StateVector& psi0);

StateVector reference_evolve(const ControlPair& pair, const KineticOperator& kinetic,
                             const PotentialOperator& potential, double t0, double t1,
                             const StateVector& psi0, const ReferenceOptions& options,
                             ReferenceReport* report = nullptr);

/// Dense U(T, 0); convergence is measured in the Frobenius norm, which
/// dominates the operator norm.
Eigen::MatrixXcd dense_reference_propagator(const ControlPair& pair,
                                            const KineticOperator& kinetic,
                                            const PotentialOperator& potential,
                                            double T, double tol);

Eigen::MatrixXcd dense_reference_propagator(const ControlPair& pair,
                                            const KineticOperator& kinetic,
                                            const PotentialOperator& potential,
                                            double t0, double t1,
                                            const ReferenceOptions& options,
                                            ReferenceReport* report = nullptr);

/// `segments` + 1 snapshots at t_k = k T / segments, each segment converged
/// to tol / segments.
std::vector<Snapshot> reference_trajectory(const ControlPair& pair,
                                           const KineticOperator& kinetic,
                                           const PotentialOperator& potential,
                                           double T, double tol,
                                           const StateVector& psi0, int segments);

} // namespace trotter
