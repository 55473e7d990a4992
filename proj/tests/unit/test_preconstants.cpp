#include <trotter/errors.hpp>
#include <trotter/experiments.hpp>
#include <trotter/preconstants.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace trotter;

TEST(Preconstants, G1Example) {
  ControlNorms f;
  f.f1 = 1.5;
  f.f2 = 2.0;
  HamiltonianNorms h;
  h.c12 = 10.0;
  const Preconstants pc = local_preconstants(Scheme::G1, f, h);
  EXPECT_DOUBLE_EQ(pc.alpha, 15.0);
  EXPECT_EQ(pc.beta, 0.0);
  EXPECT_EQ(pc.gamma, 0.0);
  EXPECT_NEAR(global_operator_bound(pc, 1.0, 100), 0.15, 1e-15);
}

TEST(Preconstants, S1ConstantControls) {
  ControlNorms f;
  f.f1 = 2.0;
  f.f2 = 3.0;
  f.f1_d1 = 0.0;
  f.f2_d1 = 0.0;
  HamiltonianNorms h;
  h.h1 = 100.0;
  h.h2 = 5.0;
  h.c12 = 7.0;
  const Preconstants pc = local_preconstants(Scheme::S1, f, h);
  EXPECT_DOUBLE_EQ(pc.alpha, 0.5 * 2 * 3 * 7);
  EXPECT_EQ(pc.beta, 0.0);
}

TEST(Preconstants, G2Example) {
  ControlNorms f;
  f.f1 = 1.0;
  f.f2 = 1.0;
  f.f1_d1 = 0.0;
  f.f2_d1 = 0.0;
  HamiltonianNorms h;
  h.c12 = 1.0;
  h.c112 = 8.0;
  h.c221 = 4.0;
  EXPECT_NEAR(local_preconstants(Scheme::G2, f, h).alpha, 3.0 + 1.0 / 3, 1e-14);
}

TEST(Preconstants, MissingInputsAreRejected) {
  ControlNorms f;
  f.f1 = 1.0;
  f.f2 = 1.0;
  HamiltonianNorms h;
  h.c12 = 1.0;
  EXPECT_THROW(local_preconstants(Scheme::S1, f, h), PreconditionError);
  EXPECT_THROW(local_preconstants(Scheme::G2, f, h), PreconditionError);
  f.f1_d1 = f.f2_d1 = 0.0;
  h.c112 = h.c221 = 1.0;
  EXPECT_THROW(local_preconstants(Scheme::S2, f, h), PreconditionError);
  EXPECT_NO_THROW(local_preconstants(Scheme::G2, f, h));
}

TEST(Preconstants, NonNegativeAndMonotoneInInputs) {
  ControlNorms f{1.2, 0.7, 0.3, 0.4, 0.5, 0.6};
  HamiltonianNorms h{10, 2, 3, 4.0, 5.0};
  for (Scheme s : kAllSchemes) {
    const Preconstants base = local_preconstants(s, f, h);
    EXPECT_GE(base.alpha, 0.0);
    EXPECT_GE(base.beta, 0.0);
    EXPECT_GE(base.gamma, 0.0);
    HamiltonianNorms bigger = h;
    bigger.c12 *= 2;
    bigger.c112 = *h.c112 * 2;
    bigger.c221 = *h.c221 * 2;
    EXPECT_GE(local_preconstants(s, f, bigger).alpha, base.alpha);
  }
}

TEST(GlobalBound, Formulas) {
  Preconstants pc{Scheme::S1, 1.0, 1.0, 0.0};
  EXPECT_NEAR(global_operator_bound(pc, 1.0, 10), 0.11, 1e-15);
  pc = {Scheme::S2, 1.0, 2.0, 3.0};
  EXPECT_NEAR(global_operator_bound(pc, 2.0, 4), 8.0 / 16 + 2 * 16.0 / 64 + 3 * 32.0 / 256, 1e-14);
  pc = {Scheme::G2, 5.0, 0.0, 0.0};
  EXPECT_NEAR(global_operator_bound(pc, 1.0, 10), 0.05, 1e-15);
  EXPECT_NEAR(local_bound(pc, 0.1), global_operator_bound(pc, 0.1, 1), 0.0);
  for (Scheme s : kAllSchemes) EXPECT_EQ(global_operator_bound({s, 0, 0, 0}, 3.0, 7), 0.0);
}

TEST(Norms, ControlAndHamiltonian) {
  const ControlPair pair = make_control_preset("modulated-mass", {10.0}, 0.16);
  const ControlNorms f = control_norms(pair, 0.16);
  EXPECT_NEAR(f.f1, 1.5, 1e-9);
  EXPECT_NEAR(f.f2, 2.0, 1e-12);
  ASSERT_TRUE(f.f1_d1 && f.f1_d2 && f.f2_d1 && f.f2_d2);
  EXPECT_NEAR(*f.f1_d1, 5.0 * std::cos(0.5), 1e-9);
  EXPECT_NEAR(*f.f1_d2, 50.0, 1e-9);
  EXPECT_NEAR(*f.f2_d1, std::sin(0.16), 1e-9);

  const Problem pb = make_problem(16, Discretization::FiniteDifference, "one-minus-cos");
  const HamiltonianNorms exact = hamiltonian_norms(pb.kinetic, pb.potential, true);
  const HamiltonianNorms power = hamiltonian_norms(pb.kinetic, pb.potential, false);
  EXPECT_NEAR(exact.h1, pb.kinetic.norm(), 0.0);
  EXPECT_NEAR(exact.h2, 2.0, 1e-14);
  EXPECT_NEAR(power.c12, exact.c12, 1e-4 * exact.c12);
  EXPECT_NEAR(*power.c112, *exact.c112, 1e-4 * *exact.c112);
  EXPECT_NEAR(*power.c221, *exact.c221, 1e-4 * *exact.c221);
}

TEST(LocalBound, HoldsForEveryScheme) {
  for (int n : {16, 64}) {
    const Problem pb = make_problem(n, Discretization::FiniteDifference, "one-minus-cos");
    for (double a : {1.0, 10.0}) {
      const ControlPair pair = make_control_preset("modulated-mass", {a}, 1.0);
      for (double h : {1e-3, 1e-4}) {
        for (Scheme s : kAllSchemes) {
          const LocalBoundCheck c = check_local_bound(s, pair, pb.kinetic, pb.potential, h);
          EXPECT_LE(c.measured, c.bound) << to_string(s) << " n=" << n << " h=" << h << " a=" << a;
          EXPECT_GT(c.measured, 0.0);
        }
      }
    }
  }
}
