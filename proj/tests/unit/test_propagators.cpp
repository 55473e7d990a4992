#include <trotter/errors.hpp>
#include <trotter/fitting.hpp>
#include <trotter/linalg.hpp>
#include <trotter/propagators.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace trotter;
using oracle::cd;
using oracle::Mat;

namespace {

constexpr double pi = std::numbers::pi;

struct Model {
  SpatialGrid grid;
  KineticOperator K;
  PotentialOperator P;
  Mat H1;
  Mat H2;
};

Model setup(int n, Discretization kind = Discretization::FiniteDifference) {
  const SpatialGrid g = periodic_pi_grid(n);
  KineticOperator K = build_laplacian(g, kind);
  PotentialOperator P = build_potential([](double x) { return 1 - std::cos(x); }, g);
  Mat H1 = K.dense().cast<cd>();
  Mat H2 = P.dense().cast<cd>();
  return {g, std::move(K), std::move(P), std::move(H1), std::move(H2)};
}

ControlPair modulated(double a, double T) { return make_control_preset("modulated-mass", {a}, T); }

Mat oracle_propagator(Scheme s, double a, const Model& st, double T, long L) {
  const auto f1 = oracle::f1_of(a);
  Mat U = Mat::Identity(st.H1.rows(), st.H1.cols());
  const double h = T / L;
  for (long l = 0; l < L; ++l) U = oracle::dense_step(s, f1, oracle::f2_fn, st.H1, st.H2, l * h, h) * U;
  return U;
}

} // namespace

TEST(Scheme, NamesAndOrders) {
  for (Scheme s : kAllSchemes) EXPECT_EQ(parse_scheme(to_string(s)), s);
  EXPECT_EQ(parse_scheme("G2"), Scheme::G2);
  EXPECT_THROW(parse_scheme("s3"), DomainError);
  EXPECT_EQ(order(Scheme::S1), 1);
  EXPECT_EQ(order(Scheme::G1), 1);
  EXPECT_EQ(order(Scheme::S2), 2);
  EXPECT_EQ(order(Scheme::G2), 2);
  EXPECT_FALSE(is_generalized(Scheme::S2));
  EXPECT_TRUE(is_generalized(Scheme::G1));
}

TEST(StepFactors, MatchQuadratureOfTheControls) {
  const double a = 3.0, t = 0.2, h = 0.05;
  const ControlPair pair = modulated(a, 1.0);
  const auto f1 = oracle::f1_of(a);

  const StepFactors s1 = step_factors(Scheme::S1, pair, t, h);
  EXPECT_NEAR(s1.kinetic_first, h * f1(t + h), 1e-15);
  EXPECT_NEAR(s1.potential, h * oracle::f2_fn(t + h), 1e-15);
  EXPECT_EQ(s1.kinetic_second, 0.0);

  const StepFactors g1 = step_factors(Scheme::G1, pair, t, h);
  EXPECT_NEAR(g1.kinetic_first, oracle::simpson(f1, t, t + h), 1e-14);
  EXPECT_NEAR(g1.potential, oracle::simpson(oracle::f2_fn, t, t + h), 1e-14);

  const StepFactors s2 = step_factors(Scheme::S2, pair, t, h);
  EXPECT_NEAR(s2.kinetic_first, 0.5 * h * f1(t + h / 2), 1e-15);
  EXPECT_NEAR(s2.kinetic_second, s2.kinetic_first, 0.0);
  EXPECT_NEAR(s2.potential, h * oracle::f2_fn(t + h / 2), 1e-15);

  const StepFactors g2 = step_factors(Scheme::G2, pair, t, h);
  EXPECT_NEAR(g2.kinetic_first, oracle::simpson(f1, t, t + h / 2), 1e-14);
  EXPECT_NEAR(g2.kinetic_second, oracle::simpson(f1, t + h / 2, t + h), 1e-14);
  EXPECT_NEAR(g2.potential, oracle::simpson(oracle::f2_fn, t, t + h), 1e-14);

  EXPECT_THROW(step_factors(Scheme::S1, pair, t, -h), DomainError);
}

TEST(Exponentials, KineticMatchesDenseExponential) {
  for (auto kind : {Discretization::FiniteDifference, Discretization::FourierSpectral}) {
    for (int n : {4, 8, 32}) {
      const Model st = setup(n, kind);
      const StateVector v(st.grid, oracle::random_vector(n, 11));
      for (double theta : {0.0, 1e-3, 0.37, -2.0}) {
        const Eigen::VectorXcd want = oracle::expm_hermitian(st.H1, theta) * v.amplitudes();
        EXPECT_LE((apply_exp_kinetic(theta, st.K, v).amplitudes() - want).norm(), 1e-11 * v.norm())
            << to_string(kind) << " n=" << n << " theta=" << theta;
      }
    }
  }
}

TEST(Exponentials, PotentialAndGroupProperty) {
  const Model st = setup(16);
  const StateVector v(st.grid, oracle::random_vector(16, 3));
  const Eigen::VectorXcd want = oracle::expm_hermitian(st.H2, 0.8) * v.amplitudes();
  EXPECT_LE((apply_exp_potential(0.8, st.P, v).amplitudes() - want).norm(), 1e-13 * v.norm());
  const StateVector two = apply_exp_kinetic(0.2, st.K, apply_exp_kinetic(0.3, st.K, v));
  EXPECT_LE((two.amplitudes() - apply_exp_kinetic(0.5, st.K, v).amplitudes()).norm(), 1e-12 * v.norm());
  const StateVector back = apply_exp_kinetic(-0.5, st.K, apply_exp_kinetic(0.5, st.K, v));
  EXPECT_LE((back.amplitudes() - v.amplitudes()).norm(), 1e-12 * v.norm());
}

TEST(TrotterStep, MatchesOracleProduct) {
  const Model st = setup(8);
  const ControlPair pair = modulated(2.0, 1.0);
  const StateVector v(st.grid, oracle::random_vector(8, 17));
  for (Scheme s : kAllSchemes) {
    const Mat U = oracle::dense_step(s, oracle::f1_of(2.0), oracle::f2_fn, st.H1, st.H2, 0.3, 0.07);
    const Eigen::VectorXcd want = U * v.amplitudes();
    EXPECT_LE((trotter_step(s, pair, st.K, st.P, 0.3, 0.07, v).amplitudes() - want).norm(), 1e-11 * v.norm())
        << to_string(s);
  }
}

TEST(DensePropagator, MatchesOracleAndIsUnitary) {
  const Model st = setup(8);
  const ControlPair pair = modulated(1.0, 1.0);
  for (Scheme s : kAllSchemes) {
    const Mat U = dense_propagator(s, pair, st.K, st.P, 1.0, 10);
    EXPECT_LE((U - oracle_propagator(s, 1.0, st, 1.0, 10)).norm(), 1e-10) << to_string(s);
    EXPECT_LE(unitarity_defect(U), 1e-12);
  }
}

TEST(DensePropagator, CapEnforced) {
  const SpatialGrid g = periodic_pi_grid(kDenseCap + 2);
  const KineticOperator K = build_laplacian_fd(g);
  const PotentialOperator P = build_potential([](double) { return 0.0; }, g);
  EXPECT_THROW(dense_propagator(Scheme::S1, modulated(1.0, 1.0), K, P, 1.0, 1), ResourceCapError);
}

TEST(Evolve, NormPreservedOverLongRuns) {
  const Model st = setup(64);
  const ControlPair pair = modulated(10.0, 1.0);
  const StateVector psi0 = sample_function([](double x) { return cd(std::cos(x), 0); }, st.grid);
  for (Scheme s : kAllSchemes) {
    const EvolutionResult r = evolve(s, pair, st.K, st.P, 1.0, 2000, psi0);
    ASSERT_EQ(r.norm_drift.size(), 2000u);
    for (double d : r.norm_drift) EXPECT_LE(d, 1e-10);
    EXPECT_NEAR(r.final_state.norm(), psi0.norm(), 1e-10);
  }
}

TEST(Evolve, FusedStepsEqualRepeatedSingleSteps) {
  const Model st = setup(16, Discretization::FourierSpectral);
  const ControlPair pair = modulated(4.0, 0.5);
  const StateVector psi0(st.grid, oracle::random_vector(16, 23));
  for (Scheme s : kAllSchemes) {
    StateVector psi = psi0;
    const long L = 25;
    for (long l = 0; l < L; ++l) psi = trotter_step(s, pair, st.K, st.P, l * 0.5 / L, 0.5 / L, psi);
    const EvolutionResult r = evolve(s, pair, st.K, st.P, 0.5, L, psi0);
    EXPECT_LE((r.final_state.amplitudes() - psi.amplitudes()).norm(), 1e-12 * psi0.norm()) << to_string(s);
  }
}

TEST(Evolve, Snapshots) {
  const Model st = setup(8);
  const ControlPair pair = modulated(1.0, 1.0);
  const StateVector psi0 = StateVector::ones(st.grid);
  const EvolutionResult r = evolve(Scheme::G2, pair, st.K, st.P, 1.0, 10, psi0, 4);
  ASSERT_EQ(r.snapshots.size(), 4u);
  EXPECT_EQ(r.snapshots[0].t, 0.0);
  EXPECT_NEAR(r.snapshots[1].t, 0.4, 1e-15);
  EXPECT_NEAR(r.snapshots[2].t, 0.8, 1e-15);
  EXPECT_NEAR(r.snapshots[3].t, 1.0, 1e-15);
  EXPECT_LE((r.snapshots[3].psi.amplitudes() - r.final_state.amplitudes()).norm(), 0.0);
  const EvolutionResult partial = evolve(Scheme::G2, pair, st.K, st.P, 0.4, 4, psi0);
  EXPECT_LE((partial.final_state.amplitudes() - r.snapshots[1].psi.amplitudes()).norm(), 1e-13);
  EXPECT_TRUE(evolve(Scheme::G2, pair, st.K, st.P, 1.0, 10, psi0).snapshots.empty());
}

TEST(Evolve, Preconditions) {
  const Model st = setup(8);
  const ControlPair pair = modulated(1.0, 1.0);
  const StateVector psi0 = StateVector::ones(st.grid);
  EXPECT_THROW(evolve(Scheme::S1, pair, st.K, st.P, 1.0, 0, psi0), DomainError);
  EXPECT_THROW(evolve(Scheme::S1, pair, st.K, st.P, 2.0, 4, psi0), DomainError);
  EXPECT_THROW(evolve(Scheme::S1, pair, st.K, st.P, 1.0, 4, StateVector::ones(periodic_pi_grid(16))),
               GridMismatch);
}

TEST(PropagateBlock, ColumnsEvolveIndependently) {
  const Model st = setup(16);
  const ControlPair pair = modulated(1.0, 1.0);
  Eigen::MatrixXcd block(16, 3);
  for (int j = 0; j < 3; ++j) block.col(j) = oracle::random_vector(16, 40 + j);
  const Eigen::MatrixXcd start = block;
  propagate_block(Scheme::S2, pair, st.K, st.P, 0.2, 0.9, 13, {block.data(), std::size_t(block.size())});
  for (int j = 0; j < 3; ++j) {
    StateVector psi(st.grid, start.col(j));
    const double h = 0.7 / 13;
    for (int l = 0; l < 13; ++l) psi = trotter_step(Scheme::S2, pair, st.K, st.P, 0.2 + l * h, h, psi);
    EXPECT_LE((block.col(j) - psi.amplitudes()).norm(), 1e-12 * psi.norm());
  }
}

TEST(Commuting, ExactWhenPotentialIsConstant) {
  // A constant potential commutes with H1, so every splitting is exact.
  const SpatialGrid g = periodic_pi_grid(16);
  const KineticOperator K = build_laplacian_fd(g);
  const PotentialOperator P = build_potential([](double) { return 0.7; }, g);
  const ControlPair pair = modulated(5.0, 1.0);
  const Mat H = K.dense().cast<cd>();
  const double F1 = oracle::simpson(oracle::f1_of(5.0), 0, 1, 20000);
  const double F2 = oracle::simpson(oracle::f2_fn, 0, 1, 20000);
  const Mat exact = oracle::expm_hermitian(H, F1) * std::exp(cd(0, -0.7 * F2));
  for (Scheme s : {Scheme::G1, Scheme::G2}) {
    EXPECT_LE((dense_propagator(s, pair, K, P, 1.0, 3) - exact).norm(), 1e-10) << to_string(s);
  }
}

TEST(Commuting, ZeroPotentialIsExactForGeneralizedSchemes) {
  const Model st = setup(8);
  const ControlPair pair = make_control_preset("zero-potential", {2.0}, 1.0);
  const double F1 = oracle::simpson(oracle::f1_of(2.0), 0, 1, 20000);
  const Mat exact = oracle::expm_hermitian(st.H1, F1);
  EXPECT_LE((dense_propagator(Scheme::G1, pair, st.K, st.P, 1.0, 1) - exact).norm(), 1e-10);
  EXPECT_LE((dense_propagator(Scheme::G2, pair, st.K, st.P, 1.0, 7) - exact).norm(), 1e-10);
  // The standard schemes only get the integral to quadrature accuracy.
  EXPECT_GT((dense_propagator(Scheme::S1, pair, st.K, st.P, 1.0, 1) - exact).norm(), 1e-4);
}

TEST(TimeReflection, SymmetricSchemesReverseTheStepOrder) {
  // All factors are complex symmetric, so running the reflected controls
  // multiplies the same factors in reverse order: the transpose.
  const Model st = setup(8);
  const ControlPair pair = modulated(3.0, 0.8);
  const ControlPair refl = time_reflected(pair);
  for (Scheme s : {Scheme::S2, Scheme::G2}) {
    const Mat U = dense_propagator(s, pair, st.K, st.P, 0.8, 9);
    const Mat R = dense_propagator(s, refl, st.K, st.P, 0.8, 9);
    EXPECT_LE((R - U.transpose()).norm(), 1e-11) << to_string(s);
  }
}

TEST(TimeReflection, ExactDynamicsRunBackwards) {
  // U_refl(T) = U(T)^T for the exact propagator too; check against RK4.
  const Model st = setup(8);
  const ControlPair pair = modulated(3.0, 0.8);
  const ControlPair refl = time_reflected(pair);
  auto g1 = [&](double t) { return refl.f1().eval(t); };
  auto g2 = [&](double t) { return refl.f2().eval(t); };
  const Mat U = oracle::rk4_propagator(oracle::f1_of(3.0), oracle::f2_fn, st.H1, st.H2, 0, 0.8, 4000);
  const Mat R = oracle::rk4_propagator(g1, g2, st.H1, st.H2, 0, 0.8, 4000);
  EXPECT_LE((R - U.transpose()).norm(), 1e-8);
}

TEST(Order, GlobalOperatorErrorSlopes) {
  const Model st = setup(8);
  const double T = 1.0, a = 1.0;
  const ControlPair pair = modulated(a, T);
  const Mat U = oracle::rk4_propagator(oracle::f1_of(a), oracle::f2_fn, st.H1, st.H2, 0, T, 40000);
  for (Scheme s : kAllSchemes) {
    std::vector<std::pair<double, double>> pts;
    for (long L : {64, 128, 256, 512}) {
      pts.emplace_back(T / L, oracle::two_norm(dense_propagator(s, pair, st.K, st.P, T, L) - U));
    }
    EXPECT_NEAR(fit_loglog_slope(pts).slope, order(s), 0.15) << to_string(s);
  }
}

TEST(Order, LocalErrorSlopes) {
  const Model st = setup(8);
  const ControlPair pair = modulated(2.0, 1.0);
  // One step from t = 0 is compared with RK4 on [0, h].
  for (Scheme s : kAllSchemes) {
    std::vector<std::pair<double, double>> pts;
    for (double h : {0.02, 0.01, 0.005, 0.0025}) {
      const Mat U = oracle::rk4_propagator(oracle::f1_of(2.0), oracle::f2_fn, st.H1, st.H2, 0, h, 400);
      pts.emplace_back(h, oracle::two_norm(dense_propagator(s, pair, st.K, st.P, h, 1) - U));
    }
    EXPECT_NEAR(fit_loglog_slope(pts).slope, order(s) + 1, 0.15) << to_string(s);
  }
}
