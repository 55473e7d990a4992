#include <trotter/errors.hpp>
#include <trotter/propagators.hpp>
#include <trotter/reference.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace trotter;
using oracle::cd;
using oracle::Mat;

namespace {

struct Fixture {
  SpatialGrid grid = periodic_pi_grid(8);
  KineticOperator K = build_laplacian_fd(grid);
  PotentialOperator P = build_potential([](double x) { return 1 - std::cos(x); }, grid);
};

} // namespace

TEST(Reference, DenseMatchesRk4) {
  const Fixture fx;
  for (double a : {1.0, 10.0}) {
    const ControlPair pair = make_control_preset("modulated-mass", {a}, 1.0);
    const Mat U = dense_reference_propagator(pair, fx.K, fx.P, 1.0, 1e-11);
    const Mat R = oracle::rk4_propagator(oracle::f1_of(a), oracle::f2_fn, fx.K.dense().cast<cd>(),
                                         fx.P.dense().cast<cd>(), 0, 1, 40000);
    EXPECT_LE(oracle::two_norm(U - R), 1e-10) << "a=" << a;
  }
}

TEST(Reference, VectorMatchesDenseColumnCombination) {
  const Fixture fx;
  const ControlPair pair = make_control_preset("modulated-mass", {3.0}, 0.5);
  const StateVector psi0(fx.grid, oracle::random_vector(8, 2));
  const StateVector psi = reference_evolve(pair, fx.K, fx.P, 0.5, 1e-12, psi0);
  const Mat U = dense_reference_propagator(pair, fx.K, fx.P, 0.5, 1e-12);
  EXPECT_LE((psi.amplitudes() - U * psi0.amplitudes()).norm() / std::sqrt(8.0), 1e-11 * psi0.norm());
}

TEST(Reference, ReportRecordsTheLadder) {
  const Fixture fx;
  const ControlPair pair = make_control_preset("modulated-mass", {1.0}, 1.0);
  ReferenceReport report;
  ReferenceOptions opt;
  opt.tol = 1e-10;
  const StateVector psi0 = StateVector::ones(fx.grid);
  reference_evolve(pair, fx.K, fx.P, 0.0, 1.0, psi0, opt, &report);
  ASSERT_FALSE(report.levels.empty());
  EXPECT_LE(report.achieved, opt.tol / 10);
  EXPECT_EQ(report.steps, report.levels.back().steps);
  for (std::size_t i = 1; i < report.levels.size(); ++i) {
    EXPECT_EQ(report.levels[i].steps, 2 * report.levels[i - 1].steps);
  }
}

TEST(Reference, SubintervalsCompose) {
  const Fixture fx;
  const ControlPair pair = make_control_preset("modulated-mass", {5.0}, 1.0);
  ReferenceOptions opt;
  opt.tol = 1e-12;
  const Mat A = dense_reference_propagator(pair, fx.K, fx.P, 0.0, 0.4, opt);
  const Mat B = dense_reference_propagator(pair, fx.K, fx.P, 0.4, 1.0, opt);
  const Mat U = dense_reference_propagator(pair, fx.K, fx.P, 0.0, 1.0, opt);
  EXPECT_LE((B * A - U).norm(), 5e-12);
}

TEST(Reference, TrajectoryEndpointsAndTimes) {
  const Fixture fx;
  const ControlPair pair = make_control_preset("modulated-mass", {1.0}, 1.0);
  const StateVector psi0 = sample_function([](double x) { return cd(std::cos(x), 0); }, fx.grid);
  const auto traj = reference_trajectory(pair, fx.K, fx.P, 1.0, 1e-10, psi0, 4);
  ASSERT_EQ(traj.size(), 5u);
  EXPECT_EQ(traj[0].t, 0.0);
  EXPECT_NEAR(traj[2].t, 0.5, 1e-15);
  EXPECT_NEAR(traj[4].t, 1.0, 1e-15);
  const StateVector end = reference_evolve(pair, fx.K, fx.P, 1.0, 1e-11, psi0);
  EXPECT_LE(rescaled_distance(traj[4].psi, end), 1e-10);
}

TEST(Reference, FailuresAreReported) {
  const Fixture fx;
  const ControlPair pair = make_control_preset("modulated-mass", {10.0}, 1.0);
  const StateVector psi0 = StateVector::ones(fx.grid);
  ReferenceOptions tiny;
  tiny.tol = 1e-12;
  tiny.max_steps = 16;
  ReferenceReport report;
  EXPECT_THROW(reference_evolve(pair, fx.K, fx.P, 0.0, 1.0, psi0, tiny, &report), AccuracyError);
  EXPECT_FALSE(report.levels.empty());
  EXPECT_THROW(reference_evolve(pair, fx.K, fx.P, 1.0, 1e-14, psi0), DomainError);
}

TEST(Reference, PlainDoublingAlsoConverges) {
  const Fixture fx;
  const ControlPair pair = make_control_preset("modulated-mass", {1.0}, 1.0);
  ReferenceOptions opt;
  opt.tol = 1e-8;
  opt.extrapolation_depth = 0;
  const StateVector psi0 = StateVector::ones(fx.grid);
  const StateVector a = reference_evolve(pair, fx.K, fx.P, 0.0, 1.0, psi0, opt);
  const StateVector b = reference_evolve(pair, fx.K, fx.P, 1.0, 1e-12, psi0);
  EXPECT_LE(rescaled_distance(a, b), 1e-8);
}
