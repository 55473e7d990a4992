#include "trotter_cli/config.hpp"

#include <trotter/errors.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace trotter::cli {

namespace {

Json experiment_tree(const ExperimentConfig& cfg) {
  Json t;
  Json discs = Json::array();
  for (auto d : cfg.discretizations) discs.push_back(to_string(d));
  Json schemes = Json::array();
  for (auto s : cfg.schemes) schemes.push_back(to_string(s));
  t["discretizations"] = discs;
  t["controls"] = {{"preset", cfg.preset},
                   {"a", cfg.preset_parameters.a},
                   {"c1", cfg.preset_parameters.c1},
                   {"c2", cfg.preset_parameters.c2}};
  t["potential"] = cfg.potential;
  t["T"] = cfg.T;
  t["n"] = cfg.n_list;
  t["L"] = cfg.L_list;
  t["epsilon"] = cfg.epsilon_list;
  t["schemes"] = schemes;
  t["reference_tol"] = cfg.reference_tol;
  t["max_steps"] = cfg.max_steps;
  t["bound_max_n"] = cfg.bound_max_n;
  t["threads"] = cfg.threads;
  t["seed"] = cfg.seed;
  t["record_timing"] = cfg.record_timing;
  return t;
}

bool compatible(const Json& a, const Json& b) {
  if (a.is_number() && b.is_number()) {
    // An integer field must stay integral.
    if (a.is_number_integer() && !b.is_number_integer()) {
      const double v = b.get<double>();
      return std::floor(v) == v;
    }
    return true;
  }
  return a.type() == b.type();
}

template <class T>
T get(const Json& tree, const char* key) {
  try {
    return tree.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

PresetParameters preset_parameters(const Json& controls) {
  PresetParameters p;
  p.a = get<double>(controls, "a");
  p.c1 = get<double>(controls, "c1");
  p.c2 = get<double>(controls, "c2");
  return p;
}

template <class F>
auto translate(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

} // namespace

Json default_tree(const std::string& subcommand) {
  if (subcommand == "norm-scaling" || subcommand == "error-scaling" ||
      subcommand == "steps-vs-epsilon" || subcommand == "order-study") {
    return experiment_tree(default_config(subcommand));
  }
  if (subcommand == "evolve") {
    const EvolveConfig e;
    return Json{{"scheme", "g2"},
                {"discretization", "fd"},
                {"controls", {{"preset", "modulated-mass"}, {"a", 1.0}, {"c1", 1.0}, {"c2", 1.0}}},
                {"potential", "one-minus-cos"},
                {"n", e.n},
                {"T", e.T},
                {"L", e.L},
                {"snapshot_every", e.snapshot_every},
                {"compare_reference", e.compare_reference},
                {"reference_tol", e.reference_tol},
                {"threads", 1},
                {"seed", 1}};
  }
  if (subcommand == "verify") {
    return Json{{"structure_sizes", {3, 4, 16, 256}},
                {"commutator_sizes", {4, 8, 16}},
                {"bound_sizes", {16, 64}},
                {"bound_steps", {1e-3, 1e-4}},
                {"frequencies", {1.0, 10.0}},
                {"unitarity_n", 64},
                {"unitarity_L", 10},
                {"threads", 1},
                {"seed", 1}};
  }
  if (subcommand == "bounds") {
    return Json{{"scheme", "g1"},
                {"norms", ""},
                {"T", 1.0},
                {"L", 1},
                {"threads", 1},
                {"seed", 1}};
  }
  throw ConfigError("unknown subcommand '" + subcommand + "'");
}

void merge_tree(Json& base, const Json& patch, const std::string& path) {
  if (!patch.is_object()) throw ConfigError("configuration must be an object at '" + path + "'");
  for (auto it = patch.begin(); it != patch.end(); ++it) {
    const std::string key = path.empty() ? it.key() : path + "." + it.key();
    if (!base.contains(it.key())) throw ConfigError("unknown configuration key '" + key + "'");
    Json& slot = base[it.key()];
    if (slot.is_object()) {
      merge_tree(slot, it.value(), key);
    } else if (compatible(slot, it.value())) {
      slot = it.value();
    } else {
      throw ConfigError("type mismatch for configuration key '" + key + "'");
    }
  }
}

void apply_override(Json& tree, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override must look like key=value: '" + assignment + "'");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  Json value = Json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  // Build the nested patch {"a": {"b": value}} for "a.b".
  Json patch = value;
  std::vector<std::string> parts;
  std::stringstream ss(key);
  for (std::string part; std::getline(ss, part, '.');) parts.push_back(part);
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    if (it->empty()) throw ConfigError("empty segment in override key '" + key + "'");
    patch = Json{{*it, patch}};
  }
  merge_tree(tree, patch);
}

Json load_tree(const std::string& subcommand, const std::string& config_path,
               const std::vector<std::string>& overrides) {
  Json tree = default_tree(subcommand);
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config file '" + config_path + "'");
    Json file = Json::parse(in, nullptr, false);
    if (file.is_discarded()) throw ConfigError("config file '" + config_path + "' is not valid JSON");
    merge_tree(tree, file);
  }
  for (const auto& o : overrides) apply_override(tree, o);
  return tree;
}

ExperimentConfig experiment_config(const std::string& experiment, const Json& tree) {
  return translate([&] {
    ExperimentConfig cfg = default_config(experiment);
    cfg.discretizations.clear();
    for (const auto& d : get<std::vector<std::string>>(tree, "discretizations")) {
      cfg.discretizations.push_back(parse_discretization(d));
    }
    const Json& controls = tree.at("controls");
    cfg.preset = get<std::string>(controls, "preset");
    cfg.preset_parameters = preset_parameters(controls);
    cfg.potential = get<std::string>(tree, "potential");
    cfg.T = get<double>(tree, "T");
    cfg.n_list = get<std::vector<int>>(tree, "n");
    cfg.L_list = get<std::vector<long>>(tree, "L");
    cfg.epsilon_list = get<std::vector<double>>(tree, "epsilon");
    cfg.schemes.clear();
    for (const auto& s : get<std::vector<std::string>>(tree, "schemes")) {
      cfg.schemes.push_back(parse_scheme(s));
    }
    cfg.reference_tol = get<double>(tree, "reference_tol");
    cfg.max_steps = get<long>(tree, "max_steps");
    cfg.bound_max_n = get<int>(tree, "bound_max_n");
    cfg.threads = get<int>(tree, "threads");
    cfg.seed = get<std::uint64_t>(tree, "seed");
    cfg.record_timing = get<bool>(tree, "record_timing");
    // Reject unknown preset or potential ids up front.
    make_control_preset(cfg.preset, cfg.preset_parameters, cfg.T);
    make_potential(cfg.potential, periodic_pi_grid(4));
    validate(cfg);
    return cfg;
  });
}

EvolveConfig evolve_config(const Json& tree) {
  return translate([&] {
    EvolveConfig e;
    e.scheme = parse_scheme(get<std::string>(tree, "scheme"));
    e.discretization = parse_discretization(get<std::string>(tree, "discretization"));
    const Json& controls = tree.at("controls");
    e.preset = get<std::string>(controls, "preset");
    e.preset_parameters = preset_parameters(controls);
    e.potential = get<std::string>(tree, "potential");
    e.n = get<int>(tree, "n");
    e.T = get<double>(tree, "T");
    e.L = get<long>(tree, "L");
    e.snapshot_every = get<int>(tree, "snapshot_every");
    e.compare_reference = get<bool>(tree, "compare_reference");
    e.reference_tol = get<double>(tree, "reference_tol");
    if (e.n < 3) throw ConfigError("n must be at least 3");
    if (!(e.T > 0.0)) throw ConfigError("T must be positive");
    if (e.L < 1) throw ConfigError("L must be at least 1");
    if (e.snapshot_every < 0) throw ConfigError("snapshot_every must be non-negative");
    if (e.compare_reference && !(e.reference_tol >= 1e-13)) {
      throw ConfigError("reference_tol must be at least 1e-13");
    }
    make_control_preset(e.preset, e.preset_parameters, e.T);
    make_potential(e.potential, periodic_pi_grid(4));
    return e;
  });
}

VerifyConfig verify_config(const Json& tree) {
  return translate([&] {
    VerifyConfig v;
    v.structure_sizes = get<std::vector<int>>(tree, "structure_sizes");
    v.commutator_sizes = get<std::vector<int>>(tree, "commutator_sizes");
    v.bound_sizes = get<std::vector<int>>(tree, "bound_sizes");
    v.bound_steps = get<std::vector<double>>(tree, "bound_steps");
    v.frequencies = get<std::vector<double>>(tree, "frequencies");
    v.unitarity_n = get<int>(tree, "unitarity_n");
    v.unitarity_L = get<long>(tree, "unitarity_L");
    v.seed = get<std::uint64_t>(tree, "seed");
    for (const auto* list : {&v.structure_sizes, &v.commutator_sizes, &v.bound_sizes}) {
      for (int n : *list) {
        if (n < 3) throw ConfigError("verify grid sizes must be at least 3");
        if (n > 512) throw ResourceCapError("verify grid sizes are limited to n <= 512");
      }
    }
    for (double h : v.bound_steps) {
      if (!(h > 0.0 && h <= 0.1)) throw ConfigError("bound_steps must lie in (0, 0.1]");
    }
    if (v.unitarity_n < 3 || v.unitarity_n > 512 || v.unitarity_L < 1) {
      throw ConfigError("invalid unitarity check size");
    }
    return v;
  });
}

void parse_norms(const std::string& text, BoundsConfig& out) {
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("norm entry must look like key=value: '" + item + "'");
    const std::string key = item.substr(0, eq);
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("bad number in norm entry '" + item + "'");
    }
    if (!(value >= 0.0) || !std::isfinite(value)) {
      throw ConfigError("norms must be finite and non-negative: '" + item + "'");
    }
    auto& c = out.controls;
    auto& h = out.hamiltonian;
    if (key == "f1") c.f1 = value;
    else if (key == "f2") c.f2 = value;
    else if (key == "f1d1") c.f1_d1 = value;
    else if (key == "f2d1") c.f2_d1 = value;
    else if (key == "f1d2") c.f1_d2 = value;
    else if (key == "f2d2") c.f2_d2 = value;
    else if (key == "h1") h.h1 = value;
    else if (key == "h2") h.h2 = value;
    else if (key == "c12") h.c12 = value;
    else if (key == "c112") h.c112 = value;
    else if (key == "c221") h.c221 = value;
    else throw ConfigError("unknown norm key '" + key + "'");
  }
}

Json to_json(const ExperimentResult& result) {
  Json slopes = Json::array();
  for (const auto& s : result.slopes) {
    Json j{{"experiment", s.experiment},
           {"scheme", s.scheme},
           {"discretization", s.discretization},
           {"quantity", s.quantity},
           {"slope", s.slope},
           {"r2", s.r2},
           {"points", s.points}};
    if (s.L > 0) j["L"] = s.L;
    if (s.n > 0) j["n"] = s.n;
    slopes.push_back(std::move(j));
  }
  std::size_t censored = 0;
  for (const auto& r : result.rows) censored += r.censored ? 1 : 0;
  return Json{{"rows", result.rows.size()}, {"censored", censored}, {"slopes", slopes}};
}

} // namespace trotter::cli
