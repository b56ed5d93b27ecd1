#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gclab/generators.hpp"

namespace gclab {

/// Declarative model description as read from a config file.
///
/// kind is one of: iid-uniform, iid-normal, iid-point, gaussian-ar1,
/// moving-average, markov-chain, constant-uniform, constant-normal.
struct ModelSpec {
  std::string kind = "iid-uniform";
  double lo = 0.0;
  double hi = 1.0;
  double mean = 0.0;
  double sd = 1.0;
  double value = 0.0;
  double rho = 0.5;
  std::vector<double> coeffs{1.0};
  double innovation_sd = 1.0;
  std::vector<std::vector<double>> transition;
  std::vector<double> values;

  bool operator==(const ModelSpec&) const = default;
};

/// Everything one run of the harness needs; every field has a documented default.
struct ExperimentSpec {
  ModelSpec model;

  // [simulate]
  std::vector<std::size_t> n_grid;  ///< default 2^6 .. 2^14
  std::size_t reps = 200;

  // [conditions]
  double delta = 1.0;
  std::vector<double> delta_grid{0.5, 1.0, 1.5, 2.0, 2.5};
  std::vector<double> x_grid;  ///< empty: 21 marginal quantiles 0.025, 0.07, ..., 0.975
  std::size_t q_max = 1000;
  std::size_t cesaro_q_max = 1000;
  std::size_t lrv_truncation = 1000;
  std::size_t r_max = 200;

  // [entropy]
  std::vector<double> epsilons{0.5, 0.1, 0.01};
  double K = 1.0;
  double r = 2.0;
  std::size_t probe_budget = 20;

  // [inequalities]
  std::size_t newman_trials = 1000;
  std::size_t newman_samples = 10'000;

  // [run]
  std::uint64_t seed = 1;
  std::string output_dir = "out";

  bool operator==(const ExperimentSpec&) const = default;
};

std::vector<std::size_t> default_n_grid();

/// Parses INI text; validates the schema, fills defaults and rejects unknown
/// keys. Errors are ErrorKind::config and name the offending key.
ExperimentSpec parse_config(const std::string& text);
ExperimentSpec load_config(const std::string& path);

/// INI text that parse_config maps back to an equal spec.
std::string serialize_config(const ExperimentSpec& spec);

/// FNV-1a 64 of serialize_config(spec), as 16 hex digits.
std::string spec_hash(const ExperimentSpec& spec);

StationaryModel build_model(const ModelSpec& spec);

/// The x grid to use: the explicit one, or 21 marginal quantiles.
std::vector<double> resolve_x_grid(const ExperimentSpec& spec, const StationaryModel& model);

}  // namespace gclab
