#pragma once

#include "trotter/controls.hpp"
#include "trotter/operators.hpp"
#include "trotter/state.hpp"

#include <Eigen/Dense>

#include <array>
#include <span>
#include <string>
#include <vector>

namespace trotter {

/// Standard (S) and generalized (G) Trotter splittings of first and second
/// order. Standard schemes freeze the controls at a quadrature point,
/// generalized schemes use the exact integral of each control.
enum class Scheme { S1, G1, S2, G2 };

inline constexpr std::array<Scheme, 4> kAllSchemes = {Scheme::S1, Scheme::G1,
                                                      Scheme::S2, Scheme::G2};

int order(Scheme s) noexcept;
bool is_generalized(Scheme s) noexcept;
std::string to_string(Scheme s);
/// Accepts "s1", "g1", "s2", "g2" (case-insensitive).
Scheme parse_scheme(const std::string& id);

/// Exponents of one step over [t, t+h]. The step applies
/// exp(-i kinetic_first H1), then exp(-i potential H2), then
/// exp(-i kinetic_second H1); first-order schemes have kinetic_second = 0.
struct StepFactors {
  double kinetic_first = 0.0;
  double potential = 0.0;
  double kinetic_second = 0.0;
};

StepFactors step_factors(Scheme scheme, const ControlPair& pair, double t, double h);

/// exp(-i theta H1) by FFT diagonalisation; matches the dense exponential.
StateVector apply_exp_kinetic(double theta, const KineticOperator& kinetic,
                              const StateVector& psi);
/// exp(-i theta H2): elementwise phases.
StateVector apply_exp_potential(double theta, const PotentialOperator& potential,
                                const StateVector& psi);

void exp_kinetic_inplace(double theta, const KineticOperator& kinetic,
                         std::span<Complex> block);
void exp_potential_inplace(double theta, const PotentialOperator& potential,
                           std::span<Complex> block);

StateVector trotter_step(Scheme scheme, const ControlPair& pair,
                         const KineticOperator& kinetic,
                         const PotentialOperator& potential, double t, double h,
                         const StateVector& psi);

struct Snapshot {
  double t;
  StateVector psi;
};

struct EvolutionResult {
  StateVector final_state;
  /// psi at t = 0, every `snapshot_every` steps, and at T (when enabled).
  std::vector<Snapshot> snapshots;
  /// |‖psi_l‖ - ‖psi_0‖| after each step.
  std::vector<double> norm_drift;
  double wall_time_ms = 0.0;
};

/// L equal steps over [0, T]. snapshot_every = 0 disables snapshots.
EvolutionResult evolve(Scheme scheme, const ControlPair& pair,
                       const KineticOperator& kinetic,
                       const PotentialOperator& potential, double T, long L,
                       const StateVector& psi0, int snapshot_every = 0);

/// L equal steps over [t0, t1] applied in place to every column of a
/// contiguous column-major block. Consecutive kinetic half steps of the
/// second-order schemes are fused.
void propagate_block(Scheme scheme, const ControlPair& pair,
                     const KineticOperator& kinetic,
                     const PotentialOperator& potential, double t0, double t1,
                     long L, std::span<Complex> block);

/// Column j is evolve(..., e_j). Throws ResourceCapError above kDenseCap.
Eigen::MatrixXcd dense_propagator(Scheme scheme, const ControlPair& pair,
                                  const KineticOperator& kinetic,
                                  const PotentialOperator& potential, double T,
                                  long L);

/// Controls reflected in time, f~(t) = f(T - t); with complex conjugation
/// they run the dynamics backwards.
ControlPair time_reflected(const ControlPair& pair);

} // namespace trotter
