#include "trotter_cli/cli.hpp"

#include <trotter/csv.hpp>
#include <trotter/errors.hpp>
#include <trotter/reference.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

#ifndef TROTTER_VERSION
#define TROTTER_VERSION "unknown"
#endif

namespace trotter::cli {

namespace fs = std::filesystem;

namespace {

const std::vector<std::pair<std::string, std::string>> kSubcommands{
    {"norm-scaling", "operator and vector norms of H1, D1 and the commutators against n"},
    {"error-scaling", "operator and vector errors of every scheme at fixed h against n"},
    {"steps-vs-epsilon", "smallest step count reaching a target error, against the target"},
    {"order-study", "vector error against step count at fixed n"},
    {"evolve", "a single evolution, optionally compared against the reference"},
    {"verify", "structural and numerical self-checks"},
    {"bounds", "step-error coefficients and global operator bound from given norms"},
};

struct Options {
  std::string config;
  std::vector<std::string> sets;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  // bounds only
  std::optional<std::string> scheme;
  std::optional<std::string> norms;
  std::optional<double> T;
  std::optional<long> L;
  bool json = false;
};

std::string utc_stamp(const char* format) {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[64];
  std::strftime(buf, sizeof buf, format, &tm);
  return buf;
}

fs::path make_run_dir(const std::string& base, const std::string& subcommand) {
  const fs::path root = base.empty() ? fs::path("runs") : fs::path(base);
  const std::string stem = subcommand + "-" + utc_stamp("%Y%m%dT%H%M%SZ");
  fs::path dir = root / stem;
  for (int k = 2; fs::exists(dir); ++k) dir = root / (stem + "-" + std::to_string(k));
  fs::create_directories(dir);
  return dir;
}

void write_json(const fs::path& path, const Json& j) {
  std::ofstream f(path);
  f << j.dump(2) << '\n';
}

int effective_threads(const Json& tree) {
  int threads = tree.value("threads", 1);
  if (const char* env = std::getenv("TROTTER_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) threads = std::min(threads, cap);
  }
  return std::max(1, threads);
}

// Flags shared by every subcommand become config overrides.
void fold_flags(Json& tree, const Options& o) {
  if (o.seed) merge_tree(tree, Json{{"seed", *o.seed}});
  if (o.threads) merge_tree(tree, Json{{"threads", *o.threads}});
  if (o.scheme) merge_tree(tree, Json{{"scheme", *o.scheme}});
  if (o.norms) merge_tree(tree, Json{{"norms", *o.norms}});
  if (o.T) merge_tree(tree, Json{{"T", *o.T}});
  if (o.L) merge_tree(tree, Json{{"L", *o.L}});
}

struct RunOutput {
  fs::path dir;
  std::vector<std::string> files;
  void write_text(const std::string& name, const std::string& text) {
    std::ofstream f(dir / name);
    f << text;
    files.push_back(name);
  }
  void write(const std::string& name, const Json& j) {
    write_json(dir / name, j);
    files.push_back(name);
  }
};

int run_experiment_command(const std::string& name, Json& tree, RunOutput& run,
                           std::ostream& out) {
  ExperimentConfig cfg = experiment_config(name, tree);
  cfg.threads = effective_threads(tree);
  const ExperimentResult result = run_experiment(cfg);
  std::ostringstream csv;
  write_csv(csv, result.rows);
  run.write_text("results.csv", csv.str());
  run.write("summary.json", to_json(result));
  for (const auto& s : result.slopes) {
    out << "slope " << s.quantity;
    if (!s.scheme.empty()) out << " scheme=" << s.scheme;
    out << " discretization=" << s.discretization;
    if (s.L > 0) out << " L=" << s.L;
    if (s.n > 0) out << " n=" << s.n;
    out << " value=" << format_double(s.slope) << " r2=" << format_double(s.r2) << '\n';
  }
  return kOk;
}

int run_evolve(Json& tree, RunOutput& run, std::ostream& out) {
  const EvolveConfig e = evolve_config(tree);
  const Problem pb = make_problem(e.n, e.discretization, e.potential);
  const ControlPair pair = make_control_preset(e.preset, e.preset_parameters, e.T);
  const EvolutionResult r =
      evolve(e.scheme, pair, pb.kinetic, pb.potential, e.T, e.L, pb.psi0, e.snapshot_every);

  std::vector<ResultRow> rows;
  auto add = [&](const std::string& q, double v) {
    ResultRow row;
    row.experiment = "evolve";
    row.scheme = to_string(e.scheme);
    row.discretization = to_string(e.discretization);
    row.n = e.n;
    row.L = e.L;
    row.quantity = q;
    row.value = v;
    rows.push_back(row);
  };
  double drift = 0.0;
  for (double d : r.norm_drift) drift = std::max(drift, d);
  add("final_norm", r.final_state.norm());
  add("max_norm_drift", drift);
  if (e.compare_reference) {
    const StateVector ref =
        reference_evolve(pair, pb.kinetic, pb.potential, e.T, e.reference_tol, pb.psi0);
    add("vec_error", rescaled_distance(r.final_state, ref) / ref.rescaled_norm());
  }
  std::ostringstream csv;
  write_csv(csv, rows);
  run.write_text("results.csv", csv.str());

  std::ostringstream state;
  state << "k,x,re,im\n";
  for (int k = 0; k < e.n; ++k) {
    state << k << ',' << format_double(pb.grid.node(k)) << ','
          << format_double(r.final_state[k].real()) << ',' << format_double(r.final_state[k].imag())
          << '\n';
  }
  run.write_text("state.csv", state.str());
  if (!r.snapshots.empty()) {
    std::ostringstream snaps;
    snaps << "t,k,re,im\n";
    for (const auto& s : r.snapshots) {
      for (int k = 0; k < e.n; ++k) {
        snaps << format_double(s.t) << ',' << k << ',' << format_double(s.psi[k].real()) << ','
              << format_double(s.psi[k].imag()) << '\n';
      }
    }
    run.write_text("snapshots.csv", snaps.str());
  }
  for (const auto& row : rows) out << row.quantity << '=' << format_double(row.value) << '\n';
  return kOk;
}

int run_verify(Json& tree, RunOutput& run, std::ostream& out) {
  const auto checks = run_verify_suite(verify_config(tree));
  std::vector<ResultRow> rows;
  Json list = Json::array();
  bool all = true;
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << " value=" << format_double(c.value)
        << " limit=" << format_double(c.limit) << '\n';
    all = all && c.passed;
    ResultRow row;
    row.experiment = "verify";
    row.quantity = c.name;
    row.value = c.value;
    rows.push_back(row);
    list.push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"limit", c.limit}});
  }
  std::ostringstream csv;
  write_csv(csv, rows);
  run.write_text("results.csv", csv.str());
  run.write("summary.json", Json{{"passed", all}, {"checks", list}});
  return all ? kOk : kCheckFailed;
}

int run_bounds(Json& tree, std::optional<RunOutput>& run, bool json, std::ostream& out) {
  BoundsConfig b;
  try {
    b.scheme = parse_scheme(tree.at("scheme").get<std::string>());
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  parse_norms(tree.at("norms").get<std::string>(), b);
  b.T = tree.at("T").get<double>();
  b.L = tree.at("L").get<long>();
  if (!(b.T >= 0.0)) throw ConfigError("T must be non-negative");
  if (b.L < 1) throw ConfigError("L must be at least 1");
  Preconstants pc;
  try {
    pc = local_preconstants(b.scheme, b.controls, b.hamiltonian);
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
  const double bound = global_operator_bound(pc, b.T, b.L);

  Json inputs{{"f1", b.controls.f1}, {"f2", b.controls.f2}, {"h1", b.hamiltonian.h1},
              {"h2", b.hamiltonian.h2}, {"c12", b.hamiltonian.c12}};
  auto opt = [&](const char* key, const std::optional<double>& v) {
    if (v) inputs[key] = *v;
  };
  opt("f1d1", b.controls.f1_d1);
  opt("f2d1", b.controls.f2_d1);
  opt("f1d2", b.controls.f1_d2);
  opt("f2d2", b.controls.f2_d2);
  opt("c112", b.hamiltonian.c112);
  opt("c221", b.hamiltonian.c221);
  const Json report{{"scheme", to_string(b.scheme)}, {"T", b.T},         {"L", b.L},
                    {"alpha", pc.alpha},             {"beta", pc.beta},   {"gamma", pc.gamma},
                    {"bound", bound},                {"inputs", inputs}};
  if (json) {
    out << report.dump(2) << '\n';
  } else {
    out << "scheme=" << to_string(b.scheme) << '\n'
        << "alpha=" << format_double(pc.alpha) << '\n'
        << "beta=" << format_double(pc.beta) << '\n'
        << "gamma=" << format_double(pc.gamma) << '\n'
        << "bound(T=" << format_double(b.T) << ",L=" << b.L << ")=" << format_double(bound)
        << '\n';
  }
  if (run) run->write("bounds.json", report);
  return kOk;
}

void report_error(std::ostream& err, const char* kind, int code, const std::string& message) {
  err << "trotter-bench: error=" << kind << " exit=" << code << " message=" << Json(message).dump()
      << '\n';
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trotter splitting benchmarks for time-dependent Schroedinger dynamics",
               "trotter-bench"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", TROTTER_VERSION);
  Options o;
  for (const auto& [name, description] : kSubcommands) {
    auto* sub = app.add_subcommand(name, description);
    sub->add_option("--config", o.config, "JSON configuration file");
    sub->add_option("--set", o.sets, "override a configuration key: key=value (repeatable)");
    sub->add_option("--out", o.out_dir, "base directory for the per-run output directory");
    sub->add_option("--seed", o.seed, "seed for all random sample vectors");
    sub->add_option("--threads", o.threads, "worker threads (capped by TROTTER_THREADS)");
    if (name == "bounds") {
      sub->add_option("--scheme", o.scheme, "s1, g1, s2 or g2");
      sub->add_option("--norms", o.norms, "comma-separated norms, e.g. f1=1.5,f2=2.0,c12=10");
      sub->add_option("--T", o.T, "final time");
      sub->add_option("--L", o.L, "number of steps");
      sub->add_flag("--json", o.json, "print the JSON report instead of key=value lines");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage", kConfigError, e.what());
    return kConfigError;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  std::optional<RunOutput> run;
  Json tree;
  const std::string started = utc_stamp("%Y-%m-%dT%H:%M:%SZ");
  int code = kOk;
  try {
    tree = load_tree(name, o.config, o.sets);
    fold_flags(tree, o);
    if (name != "bounds" || !o.out_dir.empty()) {
      run = RunOutput{make_run_dir(o.out_dir, name), {}};
      run->write("effective_config.json", tree);
    }
    if (name == "evolve") {
      code = run_evolve(tree, *run, out);
    } else if (name == "verify") {
      code = run_verify(tree, *run, out);
    } else if (name == "bounds") {
      code = run_bounds(tree, run, o.json, out);
    } else {
      code = run_experiment_command(name, tree, *run, out);
    }
  } catch (const ConfigError& e) {
    code = kConfigError;
    report_error(err, "config", code, e.what());
  } catch (const AccuracyError& e) {
    code = kAccuracyError;
    report_error(err, "accuracy", code, e.what());
  } catch (const ResourceCapError& e) {
    code = kResourceCap;
    report_error(err, "resource-cap", code, e.what());
  } catch (const Error& e) {
    code = kConfigError;
    report_error(err, "invalid-input", code, e.what());
  } catch (const std::exception& e) {
    code = kCheckFailed;
    report_error(err, "internal", code, e.what());
  }

  if (run) {
    Json args = Json::array();
    for (int i = 0; i < argc; ++i) args.push_back(argv[i]);
    Json manifest{{"tool", "trotter-bench"},
                  {"version", TROTTER_VERSION},
                  {"subcommand", name},
                  {"arguments", args},
                  {"started_utc", started},
                  {"finished_utc", utc_stamp("%Y-%m-%dT%H:%M:%SZ")},
                  {"seed", tree.value("seed", 0)},
                  {"threads", tree.is_null() ? 1 : effective_threads(tree)},
                  {"exit_code", code},
                  {"files", run->files}};
    write_json(run->dir / "manifest.json", manifest);
    out << "output=" << run->dir.string() << '\n';
  }
  return code;
}

} // namespace trotter::cli
