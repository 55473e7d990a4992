#include "trotter/fitting.hpp"

#include "trotter/errors.hpp"

#include <cmath>

namespace trotter {

SlopeFit fit_loglog_slope(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw DomainError("slope fit needs at least three points");
  double sx = 0, sy = 0;
  for (auto [x, y] : points) {
    if (!(x > 0.0 && y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
      throw DomainError("slope fit needs positive finite coordinates");
    }
    sx += std::log(x);
    sy += std::log(y);
  }
  const double m = static_cast<double>(points.size());
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (auto [x, y] : points) {
    const double dx = std::log(x) - mx, dy = std::log(y) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw DomainError("slope fit needs at least two distinct x values");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  // A flat series is fitted exactly.
  fit.r2 = syy <= 1e-30 * m ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

} // namespace trotter
