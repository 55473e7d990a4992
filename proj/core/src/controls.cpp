#include "trotter/controls.hpp"

#include "trotter/errors.hpp"
#include "trotter/quadrature.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace trotter {

ControlFunction::ControlFunction(std::string name,
                                 std::array<ScalarFn, 3> derivatives,
                                 std::optional<ScalarFn> antiderivative,
                                 std::map<std::string, double> parameters)
    : name_(std::move(name)), derivatives_(std::move(derivatives)),
      antiderivative_(std::move(antiderivative)),
      parameters_(std::move(parameters)) {
  if (!derivatives_[0]) throw ConstructionError("control needs a value evaluator");
  smoothness_ = 0;
  while (smoothness_ + 1 < 3 && derivatives_[smoothness_ + 1]) ++smoothness_;
}

ControlFunction ControlFunction::constant(double value, std::string name) {
  return ControlFunction(
      std::move(name),
      {[value](double) { return value; }, [](double) { return 0.0; },
       [](double) { return 0.0; }},
      [value](double t) { return value * t; }, {{"c", value}});
}

ControlFunction ControlFunction::with_horizon(double T) const {
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("horizon must be positive and finite");
  ControlFunction copy = *this;
  copy.horizon_ = T;
  return copy;
}

void ControlFunction::check_time(double t) const {
  const double slack = kTimeSlack * (std::isfinite(horizon_) ? std::max(1.0, horizon_) : 1.0);
  if (!(t >= -slack) || !(t <= horizon_ + slack)) {
    throw DomainError("control '" + name_ + "' evaluated at t=" + std::to_string(t) +
                      " outside [0, " + std::to_string(horizon_) + "]");
  }
}

double ControlFunction::eval(double t, int order) const {
  if (order < 0) throw DomainError("negative derivative order");
  if (order > smoothness_) throw UnsupportedDerivative(order, smoothness_);
  check_time(t);
  return derivatives_[order](t);
}

double ControlFunction::integrate(double a, double b) const {
  if (a > b) throw DomainError("integration bounds must satisfy a <= b");
  check_time(a);
  check_time(b);
  if (a == b) return 0.0;
  if (antiderivative_) return (*antiderivative_)(b) - (*antiderivative_)(a);
  return integrate_adaptive(derivatives_[0], a, b, 1e-13);
}

double sup_norm(const ControlFunction& f, int order, double T, int samples) {
  if (!(T > 0.0)) throw DomainError("sup_norm needs T > 0");
  if (order > f.smoothness()) throw UnsupportedDerivative(order, f.smoothness());
  samples = std::max(samples, 2);
  std::vector<double> values(samples + 1);
  const double dt = T / samples;
  for (int i = 0; i <= samples; ++i) {
    values[i] = std::abs(f.eval(std::min(i * dt, T), order));
  }

  // Polish the few largest interior local maxima on their bracketing cells.
  std::vector<int> peaks;
  for (int i = 1; i < samples; ++i) {
    if (values[i] >= values[i - 1] && values[i] >= values[i + 1]) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(), [&](int l, int r) { return values[l] > values[r]; });
  if (peaks.size() > 8) peaks.resize(8);

  double best = *std::max_element(values.begin(), values.end());
  auto negabs = [&](double t) { return -std::abs(f.eval(t, order)); };
  for (int i : peaks) {
    const auto [t, v] = boost::math::tools::brent_find_minima(
        negabs, (i - 1) * dt, std::min((i + 1) * dt, T), 40);
    (void)t;
    best = std::max(best, -v);
  }
  return best;
}

ControlPair::ControlPair(ControlFunction f1, ControlFunction f2, double T)
    : f1_(f1.with_horizon(T)), f2_(f2.with_horizon(T)), T_(T) {}

ControlFunction modulated_mass_control(double a) {
  if (a == 0.0) {
    return ControlFunction::constant((2.0 + std::sin(0.5)) / 2.0, "modulated-mass");
  }
  return ControlFunction(
      "modulated-mass",
      {[a](double t) { return (2.0 + std::sin(a * t + 0.5)) / 2.0; },
       [a](double t) { return a * std::cos(a * t + 0.5) / 2.0; },
       [a](double t) { return -a * a * std::sin(a * t + 0.5) / 2.0; }},
      [a](double t) { return t - std::cos(a * t + 0.5) / (2.0 * a); }, {{"a", a}});
}

ControlFunction cosine_frequency_control() {
  return ControlFunction("cosine-frequency",
                         {[](double t) { return 1.0 + std::cos(t); },
                          [](double t) { return -std::sin(t); },
                          [](double t) { return -std::cos(t); }},
                         [](double t) { return t + std::sin(t); });
}

ControlPair make_control_preset(const std::string& id, const PresetParameters& p,
                                double T) {
  if (id == "modulated-mass") {
    return ControlPair(modulated_mass_control(p.a), cosine_frequency_control(), T);
  }
  if (id == "constant") {
    return ControlPair(ControlFunction::constant(p.c1, "constant-f1"),
                       ControlFunction::constant(p.c2, "constant-f2"), T);
  }
  if (id == "zero-potential") {
    return ControlPair(modulated_mass_control(p.a), ControlFunction::constant(0.0, "zero"), T);
  }
  throw DomainError("unknown control preset '" + id + "'");
}

} // namespace trotter
