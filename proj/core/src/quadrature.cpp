#include "trotter/quadrature.hpp"

#include "trotter/errors.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <vector>

namespace trotter {

namespace {

GaussLegendreRule build_rule(int points) {
  // legendre_p_zeros returns the non-negative roots in increasing order.
  const auto half = boost::math::legendre_p_zeros<double>(points);
  GaussLegendreRule rule;
  auto weight = [points](double x) {
    const double dp = boost::math::legendre_p_prime(points, x);
    return 2.0 / ((1.0 - x * x) * dp * dp);
  };
  for (auto it = half.rbegin(); it != half.rend(); ++it) {
    if (*it == 0.0) continue;
    rule.nodes.push_back(-*it);
    rule.weights.push_back(weight(*it));
  }
  for (double x : half) {
    rule.nodes.push_back(x);
    rule.weights.push_back(weight(x));
  }
  return rule;
}

} // namespace

GaussLegendreRule gauss_legendre(int points) {
  if (points < 1) throw DomainError("Gauss-Legendre rule needs at least one point");
  static std::mutex mutex;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(points);
  if (it == cache.end()) it = cache.emplace(points, build_rule(points)).first;
  return it->second;
}

GaussLegendreRule gauss_legendre(int points, double a, double b) {
  auto rule = gauss_legendre(points);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  return rule;
}

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol) {
  if (a == b) return 0.0;
  const GaussLegendreRule unit = gauss_legendre(10);
  auto rule = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double s = 0.0;
    for (std::size_t i = 0; i < unit.nodes.size(); ++i) s += unit.weights[i] * f(mid + half * unit.nodes[i]);
    return s * half;
  };
  // Bisect until a panel agrees with the sum over its halves; the tolerance is
  // shared out in proportion to panel length.
  struct Panel {
    double lo, hi, coarse;
    int depth;
  };
  constexpr int kMaxDepth = 40;
  constexpr int kMaxPanels = 1 << 16;
  std::vector<Panel> stack{{a, b, rule(a, b), 0}};
  double total = 0.0, error = 0.0, l1 = 0.0;
  int panels = 0;
  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (p.lo + p.hi);
    const double left = rule(p.lo, mid), right = rule(mid, p.hi);
    const double diff = std::abs(left + right - p.coarse);
    const double share = abs_tol * (p.hi - p.lo) / (b - a);
    const double floor = 8 * std::numeric_limits<double>::epsilon() * (std::abs(left) + std::abs(right));
    if (diff <= std::max(share, floor) || p.depth >= kMaxDepth || ++panels > kMaxPanels) {
      total += left + right;
      error += diff;
      l1 += std::abs(left) + std::abs(right);
      continue;
    }
    stack.push_back({p.lo, mid, left, p.depth + 1});
    stack.push_back({mid, p.hi, right, p.depth + 1});
  }
  if (!(error <= abs_tol) && !(error <= 64 * std::numeric_limits<double>::epsilon() * l1)) {
    throw AccuracyError("adaptive quadrature did not reach tolerance", error);
  }
  return total;
}

} // namespace trotter
