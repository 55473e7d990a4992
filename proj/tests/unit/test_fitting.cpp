#include <trotter/errors.hpp>
#include <trotter/fitting.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace trotter;

TEST(Fitting, ExactLaws) {
  const SlopeFit sq = fit_loglog_slope({{1, 1}, {2, 4}, {4, 16}});
  EXPECT_NEAR(sq.slope, 2.0, 1e-14);
  EXPECT_NEAR(sq.r2, 1.0, 1e-14);
  EXPECT_NEAR(fit_loglog_slope({{1, 2}, {2, 4}, {4, 8}}).slope, 1.0, 1e-14);
  EXPECT_NEAR(fit_loglog_slope({{1, 2}, {2, 4}, {4, 8}}).intercept, std::log(2.0), 1e-14);
  const SlopeFit flat = fit_loglog_slope({{1, 3}, {2, 3}, {8, 3}});
  EXPECT_EQ(flat.slope, 0.0);
  EXPECT_EQ(flat.r2, 1.0);
}

TEST(Fitting, RejectsBadInput) {
  EXPECT_THROW(fit_loglog_slope({{1, 1}, {2, 2}}), DomainError);
  EXPECT_THROW(fit_loglog_slope({{1, 1}, {2, 0}, {3, 1}}), DomainError);
  EXPECT_THROW(fit_loglog_slope({{-1, 1}, {2, 1}, {3, 1}}), DomainError);
}

TEST(Fitting, RecoversPowerLawUnderNoise) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> noise(0.0, 0.02);
  for (double p : {-2.0, -0.5, 0.0, 1.0, 3.0}) {
    std::vector<std::pair<double, double>> pts;
    for (int k = 0; k < 10; ++k) {
      const double x = std::pow(2.0, k);
      pts.emplace_back(x, 5.0 * std::pow(x, p) * std::exp(noise(rng)));
    }
    const SlopeFit f = fit_loglog_slope(pts);
    EXPECT_NEAR(f.slope, p, 0.02);
    EXPECT_GE(f.r2, 0.0);
    EXPECT_LE(f.r2, 1.0);
  }
}
