#pragma once

#include <array>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>

namespace trotter {

using ScalarFn = std::function<double(double)>;

/// A scalar control f(t) together with its first derivatives.
///
/// Controls are immutable after construction and safe to share between
/// threads. The domain is [0, horizon]; evaluating outside it throws
/// DomainError. When no closed-form antiderivative is supplied, integrals
/// fall back to adaptive quadrature.
class ControlFunction {
public:
  /// `derivatives` holds f, f', f'' (unused trailing entries may be empty);
  /// the declared smoothness is the number of leading non-empty entries
  /// minus one.
  ControlFunction(std::string name, std::array<ScalarFn, 3> derivatives,
                  std::optional<ScalarFn> antiderivative = std::nullopt,
                  std::map<std::string, double> parameters = {});

  static ControlFunction constant(double value, std::string name = "constant");

  const std::string& name() const noexcept { return name_; }
  int smoothness() const noexcept { return smoothness_; }
  bool has_antiderivative() const noexcept { return antiderivative_.has_value(); }
  const std::map<std::string, double>& parameters() const noexcept { return parameters_; }
  double horizon() const noexcept { return horizon_; }

  /// Copy restricted to [0, T].
  ControlFunction with_horizon(double T) const;

  /// f^{(order)}(t).
  double eval(double t, int order = 0) const;

  /// Integral of f over [a, b], a <= b inside the domain.
  double integrate(double a, double b) const;

private:
  void check_time(double t) const;

  std::string name_;
  std::array<ScalarFn, 3> derivatives_;
  std::optional<ScalarFn> antiderivative_;
  std::map<std::string, double> parameters_;
  int smoothness_ = 0;
  double horizon_ = std::numeric_limits<double>::infinity();
};

/// Relative slack allowed when a time lands a rounding error past the
/// horizon (t = l * T / L accumulates one ulp or two).
inline constexpr double kTimeSlack = 1e-12;

/// sup_{t in [0,T]} |f^{(order)}(t)|: dense sampling followed by a local
/// Brent polish around the best samples.
double sup_norm(const ControlFunction& f, int order, double T,
                int samples = 10000);

/// The two controls multiplying H1 and H2, restricted to [0, T].
class ControlPair {
public:
  ControlPair(ControlFunction f1, ControlFunction f2, double T);

  const ControlFunction& f1() const noexcept { return f1_; }
  const ControlFunction& f2() const noexcept { return f2_; }
  double horizon() const noexcept { return T_; }

private:
  ControlFunction f1_;
  ControlFunction f2_;
  double T_;
};

/// Parameters understood by the built-in presets.
struct PresetParameters {
  double a = 1.0;  ///< frequency of the modulated-mass control
  double c1 = 1.0; ///< constant value of f1 for "constant"
  double c2 = 1.0; ///< constant value of f2 for "constant"
};

/// Built-in control presets by id:
///   "modulated-mass" f1 = (2 + sin(a t + 0.5)) / 2, f2 = 1 + cos t
///   "constant"       f1 = c1, f2 = c2
///   "zero-potential" f1 as in "modulated-mass", f2 = 0
/// Throws DomainError for an unknown id.
ControlPair make_control_preset(const std::string& id, const PresetParameters& p,
                                double T);

/// The modulated effective-mass control (2 + sin(a t + 0.5)) / 2.
ControlFunction modulated_mass_control(double a);

/// The frequency control 1 + cos t.
ControlFunction cosine_frequency_control();

} // namespace trotter
