#include "trotter/preconstants.hpp"

#include "trotter/analysis.hpp"
#include "trotter/errors.hpp"
#include "trotter/linalg.hpp"
#include "trotter/reference.hpp"

#include <cmath>
#include <string>

namespace trotter {

namespace {

double need(const std::optional<double>& x, const char* what, Scheme s) {
  if (!x) {
    throw PreconditionError(std::string("scheme ") + to_string(s) + " needs " + what);
  }
  return *x;
}

} // namespace

ControlNorms control_norms(const ControlPair& pair, double T) {
  ControlNorms out;
  const auto& f1 = pair.f1();
  const auto& f2 = pair.f2();
  out.f1 = sup_norm(f1, 0, T);
  out.f2 = sup_norm(f2, 0, T);
  if (f1.smoothness() >= 1) out.f1_d1 = sup_norm(f1, 1, T);
  if (f2.smoothness() >= 1) out.f2_d1 = sup_norm(f2, 1, T);
  if (f1.smoothness() >= 2) out.f1_d2 = sup_norm(f1, 2, T);
  if (f2.smoothness() >= 2) out.f2_d2 = sup_norm(f2, 2, T);
  return out;
}

HamiltonianNorms hamiltonian_norms(const KineticOperator& kinetic,
                                   const PotentialOperator& potential, bool exact) {
  auto norm = [exact](const Eigen::MatrixXcd& M) {
    return exact ? spectral_norm_exact(M) : operator_norm(M);
  };
  const Eigen::MatrixXcd H1 = dense_h1(kinetic);
  const Eigen::MatrixXcd H2 = dense_h2(potential);
  const Eigen::MatrixXcd C = commutator(H1, H2);
  HamiltonianNorms out;
  out.h1 = kinetic.norm();
  out.h2 = potential.norm();
  out.c12 = norm(C);
  out.c112 = norm(commutator(H1, C));
  out.c221 = norm(commutator(H2, -C));
  return out;
}

Preconstants local_preconstants(Scheme scheme, const ControlNorms& f,
                                const HamiltonianNorms& h) {
  Preconstants pc;
  pc.scheme = scheme;
  switch (scheme) {
  case Scheme::S1: {
    const double d1 = need(f.f1_d1, "||f1'||", scheme);
    const double d2 = need(f.f2_d1, "||f2'||", scheme);
    pc.alpha = 0.5 * d1 * h.h1 + 0.5 * d2 * h.h2 + 0.5 * f.f1 * f.f2 * h.c12;
    pc.beta = f.f1 * d2 * h.c12 / 6.0;
    break;
  }
  case Scheme::G1:
    pc.alpha = 0.5 * f.f1 * f.f2 * h.c12;
    break;
  case Scheme::S2: {
    const double a1 = need(f.f1_d1, "||f1'||", scheme);
    const double a2 = need(f.f2_d1, "||f2'||", scheme);
    const double b1 = need(f.f1_d2, "||f1''||", scheme);
    const double b2 = need(f.f2_d2, "||f2''||", scheme);
    const double c112 = need(h.c112, "||[H1,[H1,H2]]||", scheme);
    const double c221 = need(h.c221, "||[H2,[H2,H1]]||", scheme);
    const double f1 = f.f1;
    const double f2 = f.f2;
    pc.alpha = 7.0 / 24 * b1 * h.h1 + 1.0 / 12 * a1 * f2 * h.h1 + 7.0 / 24 * b2 * h.h2 +
               (a1 * f2 + f1 * a2) / 6.0 * h.c12 + 1.0 / 24 * f1 * f1 * f2 * c112 +
               1.0 / 12 * f1 * f2 * f2 * c221;
    pc.beta = 1.0 / 64 * a1 * a2 * h.h1 +
              (1.0 / 192 * f1 * b2 + 1.0 / 192 * b1 * f2 + 1.0 / 48 * a1 * a2) * h.c12 +
              1.0 / 96 * f1 * a1 * f2 * c112 + 1.0 / 48 * f1 * f2 * a2 * c221;
    pc.gamma = 1.0 / 960 * a1 * a1 * f2 * c112 + 1.0 / 480 * f1 * a2 * a2 * c221;
    break;
  }
  case Scheme::G2: {
    const double a1 = need(f.f1_d1, "||f1'||", scheme);
    const double a2 = need(f.f2_d1, "||f2'||", scheme);
    const double c112 = need(h.c112, "||[H1,[H1,H2]]||", scheme);
    const double c221 = need(h.c221, "||[H2,[H2,H1]]||", scheme);
    pc.alpha = (7.0 / 12 * f.f1 * a2 + 11.0 / 24 * a1 * f.f2) * h.c12 +
               3.0 / 8 * f.f1 * f.f1 * f.f2 * c112 + 1.0 / 12 * f.f1 * f.f2 * f.f2 * c221;
    break;
  }
  }
  return pc;
}

double global_operator_bound(const Preconstants& pc, double T, long L) {
  if (L < 1) throw DomainError("step count must be at least 1");
  const double h = T / static_cast<double>(L);
  // L h^{p+1} (alpha + beta h + gamma h^2) written out per scheme.
  switch (pc.scheme) {
  case Scheme::S1: return T * h * (pc.alpha + pc.beta * h);
  case Scheme::G1: return T * h * pc.alpha;
  case Scheme::S2: return T * h * h * (pc.alpha + pc.beta * h + pc.gamma * h * h);
  case Scheme::G2: return T * h * h * pc.alpha;
  }
  return 0.0;
}

double local_bound(const Preconstants& pc, double h) {
  return global_operator_bound(pc, h, 1);
}

LocalBoundCheck check_local_bound(Scheme scheme, const ControlPair& pair,
                                  const KineticOperator& kinetic,
                                  const PotentialOperator& potential, double h,
                                  double reference_tol) {
  ReferenceOptions opt;
  opt.tol = reference_tol;
  const Eigen::MatrixXcd Uref =
      dense_reference_propagator(pair, kinetic, potential, 0.0, h, opt);
  const Eigen::MatrixXcd U = dense_propagator(scheme, pair, kinetic, potential, h, 1);
  const Preconstants pc =
      local_preconstants(scheme, control_norms(pair, h), hamiltonian_norms(kinetic, potential));
  return {spectral_norm_exact(U - Uref), local_bound(pc, h), pc};
}

} // namespace trotter
