#pragma once

#include "trotter/controls.hpp"
#include "trotter/operators.hpp"
#include "trotter/propagators.hpp"

#include <optional>

namespace trotter {

/// Sup norms of the controls and the derivatives a scheme needs.
struct ControlNorms {
  double f1 = 0.0;
  double f2 = 0.0;
  std::optional<double> f1_d1, f2_d1; ///< ||f'||
  std::optional<double> f1_d2, f2_d2; ///< ||f''||
};

/// Operator norms entering the step-error coefficients.
struct HamiltonianNorms {
  double h1 = 0.0;
  double h2 = 0.0;
  double c12 = 0.0;               ///< ||[H1, H2]||
  std::optional<double> c112;     ///< ||[H1, [H1, H2]]||
  std::optional<double> c221;     ///< ||[H2, [H2, H1]]||
};

/// Coefficients of h^{p+1}, h^{p+2}, h^{p+3} in the one-step operator error
/// bound. Unused coefficients stay zero.
struct Preconstants {
  Scheme scheme = Scheme::S1;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// Sup norms over [0, T]; derivatives up to the controls' smoothness.
ControlNorms control_norms(const ControlPair& pair, double T);

/// Dense norms (exact eigensolve when `exact`, power iteration otherwise).
HamiltonianNorms hamiltonian_norms(const KineticOperator& kinetic,
                                   const PotentialOperator& potential, bool exact = true);

/// Throws PreconditionError naming the first missing input.
Preconstants local_preconstants(Scheme scheme, const ControlNorms& f,
                                const HamiltonianNorms& h);

/// S1: a T^2/L + b T^3/L^2; G1: a T^2/L;
/// S2: a T^3/L^2 + b T^4/L^3 + c T^5/L^4; G2: a T^3/L^2.
double global_operator_bound(const Preconstants& pc, double T, long L);

/// One step of size h: the global bound with T = h, L = 1.
double local_bound(const Preconstants& pc, double h);

struct LocalBoundCheck {
  double measured; ///< ||U_scheme(h, 0) - U_ref(h, 0)|| (exact 2-norm)
  double bound;    ///< local_bound with sup norms over [0, h]
  Preconstants preconstants;
};

/// One step of size h from t = 0 against the dense reference.
LocalBoundCheck check_local_bound(Scheme scheme, const ControlPair& pair,
                                  const KineticOperator& kinetic,
                                  const PotentialOperator& potential, double h,
                                  double reference_tol = 1e-13);

} // namespace trotter
