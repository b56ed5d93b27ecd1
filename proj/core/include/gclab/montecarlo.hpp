#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gclab/conditions.hpp"
#include "gclab/config.hpp"
#include "gclab/empirical.hpp"
#include "gclab/fit.hpp"

namespace gclab {

struct RunOptions {
  unsigned threads = 1;
  /// When set, the DeviationPath CSV is written here.
  std::optional<std::string> csv_path;
};

/// Least squares of log(mean deviation) on log(n); needs 3 rows with positive means.
SlopeFit fit_decay_slope(const DeviationPath& path);

DeviationPath run_convergence_study(const ExperimentSpec& spec, const RunOptions& options = {});

struct DeltaScanEntry {
  double delta = 1.0;
  Verdict c1 = Verdict::indeterminate;
  Verdict c2 = Verdict::indeterminate;
  Verdict gcep_c1 = Verdict::indeterminate;
  Verdict gcep_c2 = Verdict::indeterminate;
};

/// Hypothesis side of the GC theorems for one model.
struct ConditionSuite {
  std::string model_id;
  std::string spec_hash;
  std::uint64_t seed = 0;

  ConditionReport c1;  ///< identity observable at spec.delta
  ConditionReport c2;
  IndicatorConditions gcep;
  std::vector<DeltaScanEntry> delta_scan;

  std::optional<CesaroReport> cesaro_cov13;  ///< associated families only
  std::optional<CesaroReport> cesaro_cov;    ///< on U = F(X)
  std::optional<LongRunVariance> long_run_variance;  ///< of U = F(X)

  std::vector<double> phi_profile;  ///< markov chains only
  std::vector<PhiDecayReport> phi_checks;

  /// Every evaluated condition came out bounded / to-zero / pass.
  bool all_positive() const;
};

ConditionSuite run_condition_suite(const ExperimentSpec& spec);

}  // namespace gclab
