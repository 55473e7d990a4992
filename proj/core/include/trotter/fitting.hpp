#pragma once

#include <utility>
#include <vector>

namespace trotter {

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 1.0;
};

/// Least-squares fit of log y against log x. Needs at least three points with
/// positive coordinates. A constant y gives slope 0 with r2 = 1.
SlopeFit fit_loglog_slope(const std::vector<std::pair<double, double>>& points);

} // namespace trotter
