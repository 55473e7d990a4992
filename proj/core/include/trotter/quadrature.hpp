#pragma once

#include <functional>
#include <vector>

namespace trotter {

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int points);

/// The rule mapped onto [a, b].
GaussLegendreRule gauss_legendre(int points, double a, double b);

/// Adaptive Gauss-Legendre integration by panel bisection of a smooth scalar integrand.
/// Throws AccuracyError carrying the error estimate if `abs_tol` is not met.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol = 1e-13);

} // namespace trotter
