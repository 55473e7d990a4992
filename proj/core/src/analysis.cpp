#include "trotter/analysis.hpp"

#include "trotter/errors.hpp"
#include "trotter/quadrature.hpp"
#include "trotter/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace trotter {

namespace {

std::span<Complex> as_span(Eigen::VectorXcd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

void check_fd(const SpatialGrid& grid, const Eigen::VectorXd& v) {
  if (v.size() != grid.size()) throw GridMismatch("potential length does not match grid");
}

// Cyclic forward differences V^(j).
Eigen::VectorXd forward_difference(const Eigen::VectorXd& v, double s) {
  const auto n = v.size();
  Eigen::VectorXd out(n);
  for (Eigen::Index k = 0; k < n; ++k) out[k] = s * (v[(k + 1) % n] - v[k]);
  return out;
}

Eigen::VectorXcd commutator_action(const KineticOperator& kinetic,
                                   const PotentialOperator& potential,
                                   const Eigen::VectorXcd& psi) {
  const auto& v = potential.values();
  Eigen::VectorXcd a = v.cast<Complex>().cwiseProduct(psi);
  kinetic.apply_inplace(as_span(a));
  Eigen::VectorXcd b = psi;
  kinetic.apply_inplace(as_span(b));
  return a - v.cast<Complex>().cwiseProduct(b);
}

} // namespace

Eigen::MatrixXcd dense_h1(const KineticOperator& kinetic) {
  return kinetic.dense().cast<Complex>();
}

Eigen::MatrixXcd dense_h2(const PotentialOperator& potential) {
  return potential.values().cast<Complex>().asDiagonal();
}

Eigen::MatrixXcd commutator_h1h2_fd(const SpatialGrid& grid, const Eigen::VectorXd& v) {
  check_fd(grid, v);
  require_dense_cap(grid.size());
  const int n = grid.size();
  const double s2 = grid.scale() * grid.scale();
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const int up = (k + 1) % n;
    const int down = (k + n - 1) % n;
    C(k, up) += s2 * (v[k] - v[up]);
    C(k, down) += s2 * (v[k] - v[down]);
  }
  return C;
}

Eigen::MatrixXcd nested_h1h1h2_fd(const SpatialGrid& grid, const Eigen::VectorXd& v) {
  check_fd(grid, v);
  require_dense_cap(grid.size());
  const int n = grid.size();
  const double s = grid.scale();
  const Eigen::VectorXd v2 = forward_difference(forward_difference(v, s), s);
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const int k1 = (k + 1) % n;
    const int k2 = (k + 2) % n;
    P(k1, k1) += -2.0 * v2[k];
    P(k, k2) += v2[k];
    P(k2, k) += v2[k];
  }
  return (s * s) * P;
}

StateVector apply_h1(const KineticOperator& kinetic, const StateVector& psi) {
  return kinetic.apply(psi);
}

StateVector apply_commutator_h1h2(const KineticOperator& kinetic,
                                  const PotentialOperator& potential,
                                  const StateVector& psi) {
  require_same_grid(kinetic.grid(), psi.grid());
  require_same_grid(potential.grid(), psi.grid());
  return StateVector(psi.grid(), commutator_action(kinetic, potential, psi.amplitudes()));
}

StateVector apply_nested_h1h1h2(const KineticOperator& kinetic,
                                const PotentialOperator& potential,
                                const StateVector& psi) {
  require_same_grid(kinetic.grid(), psi.grid());
  require_same_grid(potential.grid(), psi.grid());
  Eigen::VectorXcd a = commutator_action(kinetic, potential, psi.amplitudes());
  kinetic.apply_inplace(as_span(a));
  Eigen::VectorXcd b = psi.amplitudes();
  kinetic.apply_inplace(as_span(b));
  return StateVector(psi.grid(), a - commutator_action(kinetic, potential, b));
}

StateVector apply_nested_h2h2h1(const KineticOperator& kinetic,
                                const PotentialOperator& potential,
                                const StateVector& psi) {
  require_same_grid(kinetic.grid(), psi.grid());
  require_same_grid(potential.grid(), psi.grid());
  // [H2, [H2, H1]] = [[H1, H2], H2] = C H2 - H2 C.
  const Eigen::VectorXcd v = potential.values().cast<Complex>();
  const Eigen::VectorXcd a = commutator_action(kinetic, potential, v.cwiseProduct(psi.amplitudes()));
  const Eigen::VectorXcd b = v.cwiseProduct(commutator_action(kinetic, potential, psi.amplitudes()));
  return StateVector(psi.grid(), a - b);
}

VectorBoundReport vector_bound_report(Scheme scheme,
                                      const std::vector<Snapshot>& trajectory,
                                      const KineticOperator& kinetic, double T, long L) {
  if (trajectory.empty()) throw DomainError("vector bound needs a non-empty trajectory");
  if (L < 1) throw DomainError("step count must be at least 1");
  double sup = 0.0;
  for (const auto& snap : trajectory) {
    sup = std::max(sup, kinetic.apply(snap.psi).rescaled_norm());
  }
  const double psi0 = trajectory.front().psi.rescaled_norm();
  const int p = order(scheme);
  const double bracket = scheme == Scheme::G1 ? std::sqrt(psi0 * sup) + psi0 : sup + psi0;
  const double scale = p == 1 ? T * T / L : T * T * T / (static_cast<double>(L) * L);
  return {scheme, T, L, sup, psi0, bracket, bracket * scale, false};
}

std::vector<StateVector> assumption_samples(const SpatialGrid& grid, std::uint64_t seed,
                                            int random_count) {
  if (random_count < 0) throw DomainError("random sample count must be non-negative");
  const int n = grid.size();
  std::vector<StateVector> out;
  auto add = [&](Eigen::VectorXcd v) {
    StateVector s(grid, std::move(v));
    const double r = s.rescaled_norm();
    out.emplace_back(grid, s.amplitudes() / r);
  };
  auto angle = [&](int k) {
    return 2.0 * std::numbers::pi * (grid.node(k) - grid.node(0)) / grid.length();
  };
  for (int m = 0; m <= 4; ++m) {
    Eigen::VectorXcd v(n);
    for (int k = 0; k < n; ++k) v[k] = std::cos(m * angle(k));
    add(std::move(v));
  }
  for (int m = 1; m <= 5; ++m) {
    Eigen::VectorXcd v(n);
    for (int k = 0; k < n; ++k) v[k] = std::sin(m * angle(k));
    add(std::move(v));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  for (int r = 0; r < random_count; ++r) {
    Eigen::VectorXcd v(n);
    for (int k = 0; k < n; ++k) v[k] = {g(rng), g(rng)};
    add(std::move(v));
  }
  for (int j = 0; j < 10; ++j) {
    const int m = n / 2 - j;
    Eigen::VectorXcd v(n);
    for (int k = 0; k < n; ++k) v[k] = std::polar(1.0, m * angle(k));
    add(std::move(v));
  }
  return out;
}

AssumptionConstants estimate_assumption_constants(const KineticOperator& kinetic,
                                                  const PotentialOperator& potential,
                                                  const DifferenceOperator& d1,
                                                  const std::vector<StateVector>& samples) {
  require_same_grid(kinetic.grid(), potential.grid());
  require_same_grid(kinetic.grid(), d1.grid());
  AssumptionConstants out;
  for (const auto& v : samples) {
    const double vn = v.rescaled_norm();
    if (vn == 0.0) throw DomainError("assumption sample has zero norm");
    const double c = apply_commutator_h1h2(kinetic, potential, v).rescaled_norm();
    const double cc = apply_nested_h1h1h2(kinetic, potential, v).rescaled_norm();
    const double dv = d1.apply(v).rescaled_norm();
    const double hv = kinetic.apply(v).rescaled_norm();
    out.C1 = std::max(out.C1, c / (dv + vn));
    out.C2 = std::max(out.C2, cc / (hv + vn));
  }
  out.sample_count = samples.size();
  out.samples = std::to_string(samples.size()) + " samples";
  return out;
}

ExchangeReport check_exchange_bound(const KineticOperator& kinetic,
                                    const PotentialOperator& potential, double C1,
                                    double xi, const std::vector<StateVector>& samples) {
  require_same_grid(kinetic.grid(), potential.grid());
  if (!(C1 >= 0.0)) throw DomainError("C1 must be non-negative");
  const double denom = C1 + potential.norm();
  const double cap = denom > 0.0 ? 0.5 / denom : std::numeric_limits<double>::infinity();
  if (std::abs(xi) > cap * (1.0 + 1e-12)) {
    throw PreconditionError("exchange bound needs |xi| <= " + std::to_string(cap));
  }
  double worst = 0.0;
  for (const auto& v : samples) {
    const double vn = v.rescaled_norm();
    if (vn == 0.0) throw DomainError("exchange sample has zero norm");
    const StateVector w = apply_exp_potential(-xi, potential, v);
    const double lhs = kinetic.apply(w).rescaled_norm();
    const double rhs = kinetic.apply(v).rescaled_norm() + vn;
    worst = std::max(worst, lhs / rhs);
  }
  return {xi, cap, worst, samples.size(), worst <= 2.0};
}

ErrorRepresentationCheck verify_error_representation_g1(const ControlPair& pair,
                                                        const KineticOperator& kinetic,
                                                        const PotentialOperator& potential,
                                                        double h, int quad_points) {
  constexpr int kMaxN = 64;
  require_same_grid(kinetic.grid(), potential.grid());
  const int n = kinetic.grid().size();
  if (n > kMaxN) throw ResourceCapError("error representation check is limited to n <= 64");
  if (!(h > 0.0 && h <= 0.1)) throw PreconditionError("error representation needs 0 < h <= 0.1");
  if (quad_points < 1) throw DomainError("quadrature needs at least one point");

  ReferenceOptions ref;
  ref.tol = 1e-13;
  const Eigen::MatrixXcd diff =
      dense_propagator(Scheme::G1, pair, kinetic, potential, h, 1) -
      dense_reference_propagator(pair, kinetic, potential, 0.0, h, ref);

  const auto& f1 = pair.f1();
  const auto& f2 = pair.f2();
  const Eigen::VectorXd& v = potential.values();
  const Eigen::MatrixXcd C = dense_h1(kinetic) * dense_h2(potential) -
                             dense_h2(potential) * dense_h1(kinetic);

  auto phases = [&](double theta) {
    Eigen::VectorXcd p(n);
    for (int k = 0; k < n; ++k) p[k] = std::polar(1.0, -theta * v[k]);
    return p;
  };

  Eigen::MatrixXcd rep = Eigen::MatrixXcd::Zero(n, n);
  const auto outer = gauss_legendre(quad_points, 0.0, h);
  for (std::size_t i = 0; i < outer.nodes.size(); ++i) {
    const double s = outer.nodes[i];
    Eigen::MatrixXcd inner = Eigen::MatrixXcd::Zero(n, n);
    const auto rule = gauss_legendre(quad_points, 0.0, s);
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double r = rule.nodes[j];
      const Eigen::VectorXcd p = phases(f2.integrate(0.0, r));
      inner += (rule.weights[j] * f2.eval(r)) * (p.asDiagonal() * C * p.conjugate().asDiagonal());
    }
    // e^{-iF2(s)H2} e^{-iF1(s)H1}, built column by column.
    Eigen::MatrixXcd W = Eigen::MatrixXcd::Identity(n, n);
    exp_kinetic_inplace(f1.integrate(0.0, s), kinetic,
                        {W.data(), static_cast<std::size_t>(W.size())});
    W = phases(f2.integrate(0.0, s)).asDiagonal() * W;
    const Eigen::MatrixXcd Uhs = dense_reference_propagator(pair, kinetic, potential, s, h, ref);
    rep += (outer.weights[i] * f1.eval(s)) * (Uhs * inner * W);
  }
  return {quad_points, (rep - diff).norm(), diff.norm(), rep.norm()};
}

std::vector<ErrorRepresentationCheck>
verify_error_representation_g1_adaptive(const ControlPair& pair,
                                        const KineticOperator& kinetic,
                                        const PotentialOperator& potential, double h,
                                        int start_points, int max_points) {
  std::vector<ErrorRepresentationCheck> levels;
  for (int q = std::max(1, start_points); q <= max_points; q *= 2) {
    levels.push_back(verify_error_representation_g1(pair, kinetic, potential, h, q));
    const auto m = levels.size();
    if (m >= 2) {
      const double a = levels[m - 2].residual;
      const double b = levels[m - 1].residual;
      if (std::abs(a - b) < 0.1 * std::max(a, b)) break;
    }
  }
  return levels;
}

TruncationCheck fd_truncation_error(const DifferentiableFn& g, const SpatialGrid& grid,
                                    int k) {
  if (k < 0 || k >= grid.size()) throw DomainError("node index outside the grid");
  const double s = grid.scale();
  const double dx = 1.0 / s;
  const double x = grid.node(k);
  const double stencil = s * s * (g(x + dx, 0) - 2.0 * g(x, 0) + g(x - dx, 0));
  const double error = std::abs(stencil - g(x, 2));

  constexpr int kSamples = 20001;
  const double lo = grid.x_lo() - dx;
  const double hi = grid.x_hi() + dx;
  double sup4 = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double xi = lo + (hi - lo) * (static_cast<double>(i) / (kSamples - 1));
    sup4 = std::max(sup4, std::abs(g(xi, 4)));
  }
  for (int j = 0; j < grid.size(); ++j) sup4 = std::max(sup4, std::abs(g(grid.node(j), 4)));
  const double bound = sup4 / (3.0 * s * s);
  return {error, bound, error <= bound};
}

} // namespace trotter
