#pragma once

#include "trotter/controls.hpp"
#include "trotter/operators.hpp"
#include "trotter/propagators.hpp"
#include "trotter/state.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace trotter {

/// Potentials understood by the experiment harness.
///   "one-minus-cos" V(x) = 1 - cos x
///   "constant"      V(x) = 1
PotentialOperator make_potential(const std::string& id, const SpatialGrid& grid);

/// Everything one grid point of a study needs: operators on [-pi, pi) and the
/// initial state cos x.
struct Problem {
  SpatialGrid grid;
  KineticOperator kinetic;
  PotentialOperator potential;
  StateVector psi0;
};

Problem make_problem(int n, Discretization kind, const std::string& potential = "one-minus-cos");

struct ExperimentConfig {
  std::string experiment;
  std::vector<Discretization> discretizations{Discretization::FiniteDifference};
  std::string preset = "modulated-mass";
  PresetParameters preset_parameters;
  std::string potential = "one-minus-cos";
  double T = 1e-3;
  std::vector<int> n_list;
  std::vector<long> L_list;
  std::vector<double> epsilon_list;
  std::vector<Scheme> schemes{kAllSchemes.begin(), kAllSchemes.end()};
  /// 0 selects min(1e-10, eps / 100) per point in steps-vs-epsilon.
  double reference_tol = 1e-11;
  /// Upper end of the step search; larger counts are reported as censored.
  long max_steps = 1L << 26;
  /// Largest n for which the order study also evaluates the operator bound.
  int bound_max_n = 128;
  int threads = 1;
  std::uint64_t seed = 1;
  /// Wall times are written as 0 unless enabled, so that output is
  /// byte-for-byte reproducible.
  bool record_timing = false;
};

/// Defaults for "norm-scaling", "error-scaling", "steps-vs-epsilon",
/// "order-study"; throws ConfigError for any other id.
ExperimentConfig default_config(const std::string& experiment);

/// Throws ConfigError on an inconsistent configuration.
void validate(const ExperimentConfig& cfg);

struct ResultRow {
  std::string experiment;
  std::string scheme;         ///< empty when not scheme-specific
  std::string discretization;
  int n = 0;                  ///< 0 when not applicable
  long L = 0;                 ///< 0 when not applicable
  std::optional<double> epsilon;
  std::string quantity;
  double value = 0.0;
  std::optional<double> r2;   ///< set on slope rows
  double walltime_ms = 0.0;
  bool censored = false;
};

struct SlopeRecord {
  std::string experiment;
  std::string scheme;
  std::string discretization;
  std::string quantity;
  long L = 0; ///< set when the series is at fixed L
  int n = 0;  ///< set when the series is at fixed n
  double slope;
  double r2;
  std::size_t points;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<SlopeRecord> slopes;

  /// Slope for (quantity, scheme, discretization); throws if absent.
  const SlopeRecord& slope(const std::string& quantity, const std::string& scheme = "",
                           const std::string& discretization = "") const;
};

ExperimentResult run_norm_scaling(const ExperimentConfig& cfg);
ExperimentResult run_error_scaling(const ExperimentConfig& cfg);
ExperimentResult run_steps_vs_epsilon(const ExperimentConfig& cfg);
ExperimentResult run_order_study(const ExperimentConfig& cfg);

/// Dispatches on cfg.experiment.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

inline constexpr const char* kCsvHeader =
    "experiment,scheme,discretization,n,L,epsilon,quantity,value,r2,walltime_ms";

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);

/// Runs body(0..count-1) on up to `threads` workers. The first exception
/// thrown by any task is rethrown after all workers stop.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body);

/// Smallest L in [1, max_steps] with error(L) <= eps, found by doubling and
/// then bisection between a failing and a passing count. Empty if even
/// max_steps fails.
std::optional<long> minimal_steps(const std::function<double(long)>& error, double eps,
                                  long max_steps);

} // namespace trotter
