#pragma once

#include <trotter/experiments.hpp>
#include <trotter/preconstants.hpp>

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace trotter::cli {

using Json = nlohmann::ordered_json;

/// Default configuration tree for a subcommand. The default tree doubles as
/// the schema: a file or override may only set keys that already exist in it.
Json default_tree(const std::string& subcommand);

/// Recursively copies `patch` into `base`; unknown keys and type changes
/// throw ConfigError naming the dotted path.
void merge_tree(Json& base, const Json& patch, const std::string& path = "");

/// Applies "dotted.key=value". The value is read as JSON when it parses,
/// otherwise as a string.
void apply_override(Json& tree, const std::string& assignment);

/// Default tree, then the file (if any), then overrides, in that order.
Json load_tree(const std::string& subcommand, const std::string& config_path,
               const std::vector<std::string>& overrides);

ExperimentConfig experiment_config(const std::string& experiment, const Json& tree);

struct EvolveConfig {
  Scheme scheme = Scheme::G2;
  Discretization discretization = Discretization::FiniteDifference;
  std::string preset;
  PresetParameters preset_parameters;
  std::string potential;
  int n = 64;
  double T = 1e-3;
  long L = 10;
  int snapshot_every = 0;
  bool compare_reference = true;
  double reference_tol = 1e-11;
};

EvolveConfig evolve_config(const Json& tree);

struct VerifyConfig {
  std::vector<int> structure_sizes;
  std::vector<int> commutator_sizes;
  std::vector<int> bound_sizes;
  std::vector<double> bound_steps;
  std::vector<double> frequencies;
  int unitarity_n = 64;
  long unitarity_L = 10;
  std::uint64_t seed = 1;
};

VerifyConfig verify_config(const Json& tree);

struct BoundsConfig {
  Scheme scheme = Scheme::G1;
  ControlNorms controls;
  HamiltonianNorms hamiltonian;
  double T = 1.0;
  long L = 1;
};

/// Parses "f1=1.5,f2=2.0,c12=10". Keys: f1, f2, f1d1, f2d1, f1d2, f2d2, h1,
/// h2, c12, c112, c221.
void parse_norms(const std::string& text, BoundsConfig& out);

Json to_json(const ExperimentResult& result);

} // namespace trotter::cli
