#include "trotter/propagators.hpp"

#include "trotter/errors.hpp"
#include "trotter/fft.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>

namespace trotter {

int order(Scheme s) noexcept { return (s == Scheme::S1 || s == Scheme::G1) ? 1 : 2; }

bool is_generalized(Scheme s) noexcept { return s == Scheme::G1 || s == Scheme::G2; }

std::string to_string(Scheme s) {
  switch (s) {
  case Scheme::S1: return "s1";
  case Scheme::G1: return "g1";
  case Scheme::S2: return "s2";
  case Scheme::G2: return "g2";
  }
  return "?";
}

Scheme parse_scheme(const std::string& id) {
  std::string lower(id);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (Scheme s : kAllSchemes) {
    if (to_string(s) == lower) return s;
  }
  throw DomainError("unknown scheme '" + id + "'");
}

StepFactors step_factors(Scheme scheme, const ControlPair& pair, double t, double h) {
  if (h < 0.0) throw DomainError("step size must be non-negative");
  const auto& f1 = pair.f1();
  const auto& f2 = pair.f2();
  switch (scheme) {
  case Scheme::S1:
    return {h * f1.eval(t + h), h * f2.eval(t + h), 0.0};
  case Scheme::G1:
    return {f1.integrate(t, t + h), f2.integrate(t, t + h), 0.0};
  case Scheme::S2: {
    const double half = 0.5 * h * f1.eval(t + 0.5 * h);
    return {half, h * f2.eval(t + 0.5 * h), half};
  }
  case Scheme::G2:
    return {f1.integrate(t, t + 0.5 * h), f2.integrate(t, t + h),
            f1.integrate(t + 0.5 * h, t + h)};
  }
  return {};
}

void exp_kinetic_inplace(double theta, const KineticOperator& kinetic,
                         std::span<Complex> block) {
  if (theta == 0.0) return;
  const int n = kinetic.grid().size();
  if (block.size() % static_cast<std::size_t>(n) != 0) {
    throw GridMismatch("block rows do not match the kinetic operator");
  }
  const auto lambda = kinetic.eigenvalues();
  std::vector<Complex> phase(n);
  const double inv_n = 1.0 / n;
  for (int j = 0; j < n; ++j) phase[j] = std::polar(inv_n, -theta * lambda[j]);

  fft::forward(block, n);
  const std::size_t columns = block.size() / n;
  for (std::size_t c = 0; c < columns; ++c) {
    Complex* col = block.data() + c * n;
    for (int j = 0; j < n; ++j) col[j] *= phase[j];
  }
  fft::backward(block, n);
}

void exp_potential_inplace(double theta, const PotentialOperator& potential,
                           std::span<Complex> block) {
  if (theta == 0.0) return;
  const int n = potential.grid().size();
  if (block.size() % static_cast<std::size_t>(n) != 0) {
    throw GridMismatch("block rows do not match the potential operator");
  }
  const auto& v = potential.values();
  std::vector<Complex> phase(n);
  for (int k = 0; k < n; ++k) phase[k] = std::polar(1.0, -theta * v[k]);
  const std::size_t columns = block.size() / n;
  for (std::size_t c = 0; c < columns; ++c) {
    Complex* col = block.data() + c * n;
    for (int k = 0; k < n; ++k) col[k] *= phase[k];
  }
}

namespace {

std::span<Complex> as_span(Eigen::VectorXcd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

void check_operands(const KineticOperator& kinetic, const PotentialOperator& potential) {
  require_same_grid(kinetic.grid(), potential.grid());
}

// Drives L steps over [t0, t1], calling `visit(l)` after step l (1-based)
// once all of its factors have been applied.
template <class Visit>
void run_steps(Scheme scheme, const ControlPair& pair, const KineticOperator& kinetic,
               const PotentialOperator& potential, double t0, double t1, long L,
               std::span<Complex> block, Visit&& visit) {
  if (L < 1) throw DomainError("step count must be at least 1");
  if (!(t1 >= t0)) throw DomainError("evolution interval must satisfy t0 <= t1");
  const double span = t1 - t0;
  double pending = 0.0;
  for (long l = 0; l < L; ++l) {
    const double ta = t0 + span * (static_cast<double>(l) / L);
    const double tb = (l + 1 == L) ? t1 : t0 + span * (static_cast<double>(l + 1) / L);
    const StepFactors f = step_factors(scheme, pair, ta, tb - ta);
    exp_kinetic_inplace(pending + f.kinetic_first, kinetic, block);
    exp_potential_inplace(f.potential, potential, block);
    pending = f.kinetic_second;
    if (visit(l + 1, pending)) pending = 0.0;
  }
  exp_kinetic_inplace(pending, kinetic, block);
}

} // namespace

StateVector apply_exp_kinetic(double theta, const KineticOperator& kinetic,
                              const StateVector& psi) {
  require_same_grid(kinetic.grid(), psi.grid());
  Eigen::VectorXcd out = psi.amplitudes();
  exp_kinetic_inplace(theta, kinetic, as_span(out));
  return StateVector(psi.grid(), std::move(out));
}

StateVector apply_exp_potential(double theta, const PotentialOperator& potential,
                                const StateVector& psi) {
  require_same_grid(potential.grid(), psi.grid());
  Eigen::VectorXcd out = psi.amplitudes();
  exp_potential_inplace(theta, potential, as_span(out));
  return StateVector(psi.grid(), std::move(out));
}

StateVector trotter_step(Scheme scheme, const ControlPair& pair,
                         const KineticOperator& kinetic,
                         const PotentialOperator& potential, double t, double h,
                         const StateVector& psi) {
  check_operands(kinetic, potential);
  require_same_grid(kinetic.grid(), psi.grid());
  const StepFactors f = step_factors(scheme, pair, t, h);
  Eigen::VectorXcd out = psi.amplitudes();
  exp_kinetic_inplace(f.kinetic_first, kinetic, as_span(out));
  exp_potential_inplace(f.potential, potential, as_span(out));
  exp_kinetic_inplace(f.kinetic_second, kinetic, as_span(out));
  return StateVector(psi.grid(), std::move(out));
}

void propagate_block(Scheme scheme, const ControlPair& pair,
                     const KineticOperator& kinetic,
                     const PotentialOperator& potential, double t0, double t1,
                     long L, std::span<Complex> block) {
  check_operands(kinetic, potential);
  run_steps(scheme, pair, kinetic, potential, t0, t1, L, block,
            [](long, double) { return false; });
}

EvolutionResult evolve(Scheme scheme, const ControlPair& pair,
                       const KineticOperator& kinetic,
                       const PotentialOperator& potential, double T, long L,
                       const StateVector& psi0, int snapshot_every) {
  check_operands(kinetic, potential);
  require_same_grid(kinetic.grid(), psi0.grid());
  const auto start = std::chrono::steady_clock::now();

  EvolutionResult result{psi0, {}, {}, 0.0};
  Eigen::VectorXcd psi = psi0.amplitudes();
  const double norm0 = psi.norm();
  result.norm_drift.reserve(static_cast<std::size_t>(L));
  if (snapshot_every > 0) result.snapshots.push_back({0.0, psi0});

  auto block = as_span(psi);
  run_steps(scheme, pair, kinetic, potential, 0.0, T, L, block,
            [&](long l, double pending) {
              // exp(-i pending H1) is unitary, so the drift can be read off
              // before it is applied.
              result.norm_drift.push_back(std::abs(psi.norm() - norm0));
              const bool snap = snapshot_every > 0 && (l % snapshot_every == 0 || l == L);
              if (!snap) return false;
              exp_kinetic_inplace(pending, kinetic, block);
              const double t = (l == L) ? T : T * (static_cast<double>(l) / L);
              result.snapshots.push_back({t, StateVector(psi0.grid(), psi)});
              return true;
            });
  result.final_state = StateVector(psi0.grid(), std::move(psi));
  result.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

Eigen::MatrixXcd dense_propagator(Scheme scheme, const ControlPair& pair,
                                  const KineticOperator& kinetic,
                                  const PotentialOperator& potential, double T,
                                  long L) {
  const int n = kinetic.grid().size();
  require_dense_cap(n);
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Identity(n, n);
  propagate_block(scheme, pair, kinetic, potential, 0.0, T, L,
                  {U.data(), static_cast<std::size_t>(U.size())});
  return U;
}

namespace {

ControlFunction reflect(const ControlFunction& f, double T) {
  std::array<ScalarFn, 3> d;
  for (int k = 0; k <= f.smoothness(); ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    d[k] = [f, k, T, sign](double t) { return sign * f.eval(T - t, k); };
  }
  std::optional<ScalarFn> F;
  if (f.has_antiderivative()) {
    F = [f, T](double t) { return f.integrate(T - t, T); };
  }
  auto params = f.parameters();
  params["reflected_T"] = T;
  return ControlFunction(f.name() + "-reflected", std::move(d), std::move(F),
                         std::move(params));
}

} // namespace

ControlPair time_reflected(const ControlPair& pair) {
  const double T = pair.horizon();
  return ControlPair(reflect(pair.f1(), T), reflect(pair.f2(), T), T);
}

} // namespace trotter
