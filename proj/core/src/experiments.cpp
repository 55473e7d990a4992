#include "trotter/experiments.hpp"

#include "trotter/analysis.hpp"
#include "trotter/csv.hpp"
#include "trotter/errors.hpp"
#include "trotter/fitting.hpp"
#include "trotter/linalg.hpp"
#include "trotter/preconstants.hpp"
#include "trotter/reference.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

namespace trotter {

namespace {

// Dense operator norms are only attempted up to this size.
constexpr int kOperatorCap = 512;

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<int> powers_of_two(int lo, int hi) {
  std::vector<int> out;
  for (int e = lo; e <= hi; ++e) out.push_back(1 << e);
  return out;
}

// Collects rows per task and flattens them in task order.
class RowTable {
public:
  explicit RowTable(std::size_t tasks) : rows_(tasks) {}
  std::vector<ResultRow>& operator[](std::size_t i) { return rows_[i]; }
  std::vector<ResultRow> flatten() const {
    std::vector<ResultRow> out;
    for (const auto& r : rows_) out.insert(out.end(), r.begin(), r.end());
    return out;
  }

private:
  std::vector<std::vector<ResultRow>> rows_;
};

struct SeriesKey {
  std::string scheme, discretization, quantity;
  long L;
  int n;
  auto operator<=>(const SeriesKey&) const = default;
};

// Fits every (scheme, discretization, quantity, L) series of `x -> value`
// in first-appearance order and appends the slope rows.
void add_slopes(ExperimentResult& result, const std::string& experiment,
                const std::function<std::optional<double>(const ResultRow&)>& x_of,
                const std::vector<std::string>& quantities, bool group_by_L,
                bool group_by_n = false) {
  std::vector<SeriesKey> order;
  std::map<SeriesKey, std::vector<std::pair<double, double>>> series;
  for (const auto& row : result.rows) {
    if (row.censored || row.r2) continue;
    if (std::find(quantities.begin(), quantities.end(), row.quantity) == quantities.end()) {
      continue;
    }
    const auto x = x_of(row);
    if (!x) continue;
    SeriesKey key{row.scheme, row.discretization, row.quantity, group_by_L ? row.L : 0,
                  group_by_n ? row.n : 0};
    if (!series.count(key)) order.push_back(key);
    series[key].emplace_back(*x, row.value);
  }
  for (const auto& key : order) {
    const auto& pts = series[key];
    const bool usable = pts.size() >= 3 && std::all_of(pts.begin(), pts.end(), [](auto p) {
                          return p.second > 0.0;
                        });
    if (!usable) continue;
    const SlopeFit fit = fit_loglog_slope(pts);
    result.slopes.push_back({experiment, key.scheme, key.discretization, key.quantity, key.L,
                             key.n, fit.slope, fit.r2, pts.size()});
    ResultRow row;
    row.experiment = experiment;
    row.scheme = key.scheme;
    row.discretization = key.discretization;
    row.L = key.L;
    row.n = key.n;
    row.quantity = "slope_" + key.quantity;
    row.value = fit.slope;
    row.r2 = fit.r2;
    result.rows.push_back(std::move(row));
  }
}

std::optional<double> x_is_n(const ResultRow& r) {
  return r.n > 0 ? std::optional<double>(r.n) : std::nullopt;
}

struct GridTask {
  Discretization kind;
  int n;
};

std::vector<GridTask> grid_tasks(const ExperimentConfig& cfg) {
  std::vector<GridTask> tasks;
  for (auto d : cfg.discretizations) {
    for (int n : cfg.n_list) tasks.push_back({d, n});
  }
  return tasks;
}

ResultRow make_row(const ExperimentConfig& cfg, const std::string& scheme,
                   Discretization kind, int n, long L, const std::string& quantity,
                   double value) {
  ResultRow r;
  r.experiment = cfg.experiment;
  r.scheme = scheme;
  r.discretization = to_string(kind);
  r.n = n;
  r.L = L;
  r.quantity = quantity;
  r.value = value;
  return r;
}

double relative_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return (a - b).norm() / b.norm();
}

} // namespace

PotentialOperator make_potential(const std::string& id, const SpatialGrid& grid) {
  if (id == "one-minus-cos") {
    return build_potential([](double x) { return 1.0 - std::cos(x); }, grid);
  }
  if (id == "constant") return build_potential([](double) { return 1.0; }, grid);
  throw ConfigError("unknown potential '" + id + "'");
}

Problem make_problem(int n, Discretization kind, const std::string& potential) {
  SpatialGrid grid = periodic_pi_grid(n);
  KineticOperator K = build_laplacian(grid, kind);
  PotentialOperator P = make_potential(potential, grid);
  StateVector psi0 = sample_function([](double x) { return Complex(std::cos(x), 0.0); }, grid);
  return {grid, std::move(K), std::move(P), std::move(psi0)};
}

ExperimentConfig default_config(const std::string& experiment) {
  ExperimentConfig cfg;
  cfg.experiment = experiment;
  if (experiment == "norm-scaling") {
    cfg.discretizations = {Discretization::FiniteDifference, Discretization::FourierSpectral};
    cfg.n_list = powers_of_two(4, 9);
  } else if (experiment == "error-scaling") {
    cfg.T = 1e-3;
    cfg.L_list = {10};
    cfg.n_list = powers_of_two(4, 9);
    cfg.reference_tol = 1e-11;
  } else if (experiment == "steps-vs-epsilon") {
    cfg.preset_parameters.a = 10.0;
    cfg.T = 0.16;
    cfg.n_list = powers_of_two(5, 10);
    for (int e = 10; e <= 20; e += 2) cfg.epsilon_list.push_back(std::ldexp(1.0, -e));
    cfg.reference_tol = 0.0;
  } else if (experiment == "order-study") {
    cfg.T = 0.1;
    cfg.n_list = {64};
    for (int e = 4; e <= 10; ++e) cfg.L_list.push_back(1L << e);
    cfg.reference_tol = 1e-12;
  } else {
    throw ConfigError("unknown experiment '" + experiment + "'");
  }
  return cfg;
}

void validate(const ExperimentConfig& cfg) {
  static const std::vector<std::string> known{"norm-scaling", "error-scaling",
                                              "steps-vs-epsilon", "order-study"};
  if (std::find(known.begin(), known.end(), cfg.experiment) == known.end()) {
    throw ConfigError("unknown experiment '" + cfg.experiment + "'");
  }
  if (cfg.discretizations.empty()) throw ConfigError("discretization list is empty");
  if (cfg.n_list.empty()) throw ConfigError("n list is empty");
  for (int n : cfg.n_list) {
    if (n < 3) throw ConfigError("grid sizes must be at least 3");
  }
  if (cfg.schemes.empty()) throw ConfigError("scheme list is empty");
  if (!(cfg.T > 0.0) || !std::isfinite(cfg.T)) throw ConfigError("T must be positive");
  if (cfg.threads < 1) throw ConfigError("threads must be at least 1");
  if (cfg.max_steps < 1) throw ConfigError("max_steps must be at least 1");
  if (cfg.reference_tol != 0.0 && !(cfg.reference_tol >= 1e-13)) {
    throw ConfigError("reference_tol must be 0 (automatic) or at least 1e-13");
  }
  if (cfg.experiment == "error-scaling" || cfg.experiment == "order-study") {
    if (cfg.L_list.empty()) throw ConfigError("L list is empty");
    for (long L : cfg.L_list) {
      if (L < 1) throw ConfigError("step counts must be at least 1");
    }
    if (cfg.reference_tol == 0.0) throw ConfigError("reference_tol must be set");
  }
  if (cfg.experiment == "error-scaling") {
    for (int n : cfg.n_list) {
      if (n > kOperatorCap) throw ResourceCapError("operator-error studies are limited to n <= 512");
    }
  }
  if (cfg.experiment == "steps-vs-epsilon") {
    if (cfg.epsilon_list.empty()) throw ConfigError("epsilon list is empty");
    if (cfg.epsilon_list.size() != cfg.n_list.size()) {
      throw ConfigError("epsilon and n lists must be paired");
    }
    for (double e : cfg.epsilon_list) {
      if (!(e > 0.0 && e < 1.0)) throw ConfigError("epsilon values must lie in (0, 1)");
    }
  }
}

const SlopeRecord& ExperimentResult::slope(const std::string& quantity,
                                           const std::string& scheme,
                                           const std::string& discretization) const {
  for (const auto& s : slopes) {
    if (s.quantity == quantity && s.scheme == scheme &&
        (discretization.empty() || s.discretization == discretization)) {
      return s;
    }
  }
  throw DomainError("no slope for " + quantity + " " + scheme + " " + discretization);
}

ExperimentResult run_norm_scaling(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto tasks = grid_tasks(cfg);
  RowTable table(tasks.size());
  parallel_for(tasks.size(), cfg.threads, [&](std::size_t i) {
    const auto [kind, n] = tasks[i];
    const auto start = Clock::now();
    const Problem pb = make_problem(n, kind, cfg.potential);
    const StateVector& v = pb.psi0;
    auto& rows = table[i];
    auto add = [&](const std::string& q, double value) {
      rows.push_back(make_row(cfg, "", kind, n, 0, q, value));
    };
    if (n <= kOperatorCap) {
      const Eigen::MatrixXcd H1 = dense_h1(pb.kinetic);
      const Eigen::MatrixXcd H2 = dense_h2(pb.potential);
      const Eigen::MatrixXcd C = commutator(H1, H2);
      add("norm_h1", pb.kinetic.norm());
      add("norm_d1", std::sqrt(pb.kinetic.norm()));
      add("norm_c12", spectral_norm_exact(C));
      add("norm_c112", spectral_norm_exact(commutator(H1, C)));
      add("norm_c221", spectral_norm_exact(commutator(H2, -C)));
    }
    const DifferenceOperator d1 = build_difference(pb.kinetic);
    add("vec_h1", pb.kinetic.apply(v).rescaled_norm());
    add("vec_d1", d1.apply(v).rescaled_norm());
    add("vec_c12", apply_commutator_h1h2(pb.kinetic, pb.potential, v).rescaled_norm());
    add("vec_c112", apply_nested_h1h1h2(pb.kinetic, pb.potential, v).rescaled_norm());
    add("vec_c221", apply_nested_h2h2h1(pb.kinetic, pb.potential, v).rescaled_norm());
    if (cfg.record_timing) {
      const double ms = elapsed_ms(start);
      for (auto& r : rows) r.walltime_ms = ms;
    }
  });
  ExperimentResult result{table.flatten(), {}};
  add_slopes(result, cfg.experiment, x_is_n,
             {"norm_h1", "norm_d1", "norm_c12", "norm_c112", "norm_c221", "vec_h1", "vec_d1",
              "vec_c12", "vec_c112", "vec_c221"},
             false);
  return result;
}

ExperimentResult run_error_scaling(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto tasks = grid_tasks(cfg);
  const ControlPair pair = make_control_preset(cfg.preset, cfg.preset_parameters, cfg.T);
  RowTable table(tasks.size());
  parallel_for(tasks.size(), cfg.threads, [&](std::size_t i) {
    const auto [kind, n] = tasks[i];
    const Problem pb = make_problem(n, kind, cfg.potential);
    const Eigen::MatrixXcd Uref =
        dense_reference_propagator(pair, pb.kinetic, pb.potential, cfg.T, cfg.reference_tol);
    const Eigen::VectorXcd ref_psi = Uref * pb.psi0.amplitudes();
    const double ref_norm = spectral_norm_exact(Uref);
    auto& rows = table[i];
    for (long L : cfg.L_list) {
      for (Scheme s : cfg.schemes) {
        const auto start = Clock::now();
        const Eigen::MatrixXcd U =
            dense_propagator(s, pair, pb.kinetic, pb.potential, cfg.T, L);
        const double op = spectral_norm_exact(U - Uref);
        const double vec =
            (U * pb.psi0.amplitudes() - ref_psi).norm() / pb.psi0.amplitudes().norm();
        const double ms = cfg.record_timing ? elapsed_ms(start) : 0.0;
        for (auto [q, value] : {std::pair<const char*, double>{"op_error", op},
                                {"op_error_rel", op / ref_norm},
                                {"vec_error", vec}}) {
          auto row = make_row(cfg, to_string(s), kind, n, L, q, value);
          row.walltime_ms = ms;
          rows.push_back(std::move(row));
        }
      }
    }
  });
  ExperimentResult result{table.flatten(), {}};
  add_slopes(result, cfg.experiment, x_is_n, {"op_error", "op_error_rel", "vec_error"}, true);
  return result;
}

std::optional<long> minimal_steps(const std::function<double(long)>& error, double eps,
                                  long max_steps) {
  if (max_steps < 1) throw DomainError("max_steps must be at least 1");
  long failing = 0;
  long L = 1;
  while (error(L) > eps) {
    if (L >= max_steps) return std::nullopt;
    failing = L;
    L = std::min(2 * L, max_steps);
  }
  long passing = L;
  while (passing - failing > 1) {
    const long mid = failing + (passing - failing) / 2;
    if (error(mid) <= eps) {
      passing = mid;
    } else {
      failing = mid;
    }
  }
  return passing;
}

ExperimentResult run_steps_vs_epsilon(const ExperimentConfig& cfg) {
  validate(cfg);
  struct Task {
    Discretization kind;
    std::size_t index;
  };
  std::vector<Task> tasks;
  for (auto d : cfg.discretizations) {
    for (std::size_t i = 0; i < cfg.n_list.size(); ++i) tasks.push_back({d, i});
  }
  const ControlPair pair = make_control_preset(cfg.preset, cfg.preset_parameters, cfg.T);
  RowTable table(tasks.size());
  parallel_for(tasks.size(), cfg.threads, [&](std::size_t t) {
    const auto [kind, i] = tasks[t];
    const int n = cfg.n_list[i];
    const double eps = cfg.epsilon_list[i];
    const Problem pb = make_problem(n, kind, cfg.potential);
    const double tol = cfg.reference_tol > 0.0 ? cfg.reference_tol
                                               : std::max(1e-13, std::min(1e-10, eps / 100));
    const StateVector ref = reference_evolve(pair, pb.kinetic, pb.potential, cfg.T, tol, pb.psi0);
    for (Scheme s : cfg.schemes) {
      const auto start = Clock::now();
      auto error = [&](long L) {
        Eigen::VectorXcd psi = pb.psi0.amplitudes();
        propagate_block(s, pair, pb.kinetic, pb.potential, 0.0, cfg.T, L,
                        {psi.data(), static_cast<std::size_t>(psi.size())});
        return relative_distance(psi, ref.amplitudes());
      };
      const auto L = minimal_steps(error, eps, cfg.max_steps);
      auto row = make_row(cfg, to_string(s), kind, n, L.value_or(cfg.max_steps), "steps",
                          static_cast<double>(L.value_or(cfg.max_steps)));
      row.epsilon = eps;
      row.censored = !L.has_value();
      if (row.censored) row.quantity = "steps_censored";
      row.walltime_ms = cfg.record_timing ? elapsed_ms(start) : 0.0;
      table[t].push_back(std::move(row));
    }
  });
  ExperimentResult result{table.flatten(), {}};
  add_slopes(result, cfg.experiment,
             [](const ResultRow& r) {
               return r.epsilon ? std::optional<double>(1.0 / *r.epsilon) : std::nullopt;
             },
             {"steps"}, false);
  return result;
}

ExperimentResult run_order_study(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto tasks = grid_tasks(cfg);
  const ControlPair pair = make_control_preset(cfg.preset, cfg.preset_parameters, cfg.T);
  RowTable table(tasks.size());
  parallel_for(tasks.size(), cfg.threads, [&](std::size_t i) {
    const auto [kind, n] = tasks[i];
    const Problem pb = make_problem(n, kind, cfg.potential);
    const StateVector ref =
        reference_evolve(pair, pb.kinetic, pb.potential, cfg.T, cfg.reference_tol, pb.psi0);
    const bool with_operator = n <= cfg.bound_max_n;
    Eigen::MatrixXcd Uref;
    std::optional<HamiltonianNorms> hn;
    ControlNorms cn;
    if (with_operator) {
      ReferenceOptions opt;
      opt.tol = cfg.reference_tol;
      Uref = dense_reference_propagator(pair, pb.kinetic, pb.potential, 0.0, cfg.T, opt);
      hn = hamiltonian_norms(pb.kinetic, pb.potential, true);
      cn = control_norms(pair, cfg.T);
    }
    auto& rows = table[i];
    for (Scheme s : cfg.schemes) {
      for (long L : cfg.L_list) {
        const auto start = Clock::now();
        Eigen::VectorXcd psi = pb.psi0.amplitudes();
        propagate_block(s, pair, pb.kinetic, pb.potential, 0.0, cfg.T, L,
                        {psi.data(), static_cast<std::size_t>(psi.size())});
        const double ms = cfg.record_timing ? elapsed_ms(start) : 0.0;
        auto row = make_row(cfg, to_string(s), kind, n, L, "vec_error",
                            relative_distance(psi, ref.amplitudes()));
        row.walltime_ms = ms;
        rows.push_back(std::move(row));
        if (with_operator) {
          const Eigen::MatrixXcd U = dense_propagator(s, pair, pb.kinetic, pb.potential, cfg.T, L);
          rows.push_back(make_row(cfg, to_string(s), kind, n, L, "op_error",
                                  spectral_norm_exact(U - Uref)));
          const Preconstants pc = local_preconstants(s, cn, *hn);
          rows.push_back(make_row(cfg, to_string(s), kind, n, L, "op_bound",
                                  global_operator_bound(pc, cfg.T, L)));
        }
      }
    }
  });
  ExperimentResult result{table.flatten(), {}};
  add_slopes(result, cfg.experiment,
             [](const ResultRow& r) {
               return r.L > 0 ? std::optional<double>(r.L) : std::nullopt;
             },
             {"vec_error", "op_error", "op_bound"}, false, true);
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.experiment == "norm-scaling") return run_norm_scaling(cfg);
  if (cfg.experiment == "error-scaling") return run_error_scaling(cfg);
  if (cfg.experiment == "steps-vs-epsilon") return run_steps_vs_epsilon(cfg);
  if (cfg.experiment == "order-study") return run_order_study(cfg);
  throw ConfigError("unknown experiment '" + cfg.experiment + "'");
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.experiment << ',' << r.scheme << ',' << r.discretization << ',';
    if (r.n > 0) out << r.n;
    out << ',';
    if (r.L > 0) out << r.L;
    out << ',';
    if (r.epsilon) out << format_double(*r.epsilon);
    out << ',' << r.quantity << ',' << format_double(r.value) << ',';
    if (r.r2) out << format_double(*r.r2);
    out << ',' << format_double(r.walltime_ms) << '\n';
  }
}

void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body) {
  const std::size_t workers =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first;
  std::mutex mu;
  auto work = [&] {
    for (std::size_t i = next++; i < count && !failed; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!first) first = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

} // namespace trotter
