#include "gclab/montecarlo.hpp"

#include <fstream>

#include "gclab/error.hpp"

namespace gclab {

SlopeFit fit_decay_slope(const DeviationPath& path) {
  std::vector<double> n, mean;
  for (const auto& row : path.rows) {
    if (row.mean > 0.0) {
      n.push_back(static_cast<double>(row.n));
      mean.push_back(row.mean);
    }
  }
  if (n.size() < 3) fail(ErrorKind::invalid_input, "fit_decay_slope: fewer than 3 rows with positive mean");
  return fit_log_log(n, mean);
}

DeviationPath run_convergence_study(const ExperimentSpec& spec, const RunOptions& options) {
  const StationaryModel model = build_model(spec.model);
  DeviationPath path = run_gc_diagnostic(model, spec.n_grid, spec.reps, spec.seed, {options.threads});
  if (options.csv_path) {
    std::ofstream out(*options.csv_path, std::ios::binary);
    if (!out) fail(ErrorKind::io, "cannot write " + *options.csv_path);
    path.write_csv(out);
    if (!out) fail(ErrorKind::io, "write failed for " + *options.csv_path);
  }
  return path;
}

bool ConditionSuite::all_positive() const {
  bool ok = c1.verdict == Verdict::bounded && c2.verdict == Verdict::bounded &&
            gcep.worst_c1.verdict == Verdict::bounded && gcep.worst_c2.verdict == Verdict::bounded;
  if (cesaro_cov13) ok = ok && cesaro_cov13->to_zero;
  if (cesaro_cov) ok = ok && cesaro_cov->to_zero;
  for (const auto& check : phi_checks) ok = ok && check.pass;
  return ok;
}

ConditionSuite run_condition_suite(const ExperimentSpec& spec) {
  const StationaryModel model = build_model(spec.model);
  const std::vector<double> x_grid = resolve_x_grid(spec, model);
  const LagCovariance gamma = identity_gamma(model);

  ConditionSuite suite;
  suite.model_id = model.id();
  suite.spec_hash = spec_hash(spec);
  suite.seed = spec.seed;

  const GcipParams primary{spec.delta, spec.q_max};
  suite.c1 = gcip_c1(gamma, primary);
  suite.c2 = gcip_c2(gamma, primary);
  suite.gcep = gcep_indicator_conditions(model, x_grid, primary);

  for (double delta : spec.delta_grid) {
    const GcipParams params{delta, spec.q_max};
    DeltaScanEntry entry;
    entry.delta = delta;
    if (delta == spec.delta) {
      entry.c1 = suite.c1.verdict;
      entry.c2 = suite.c2.verdict;
      entry.gcep_c1 = suite.gcep.worst_c1.verdict;
      entry.gcep_c2 = suite.gcep.worst_c2.verdict;
    } else {
      entry.c1 = gcip_c1(gamma, params).verdict;
      entry.c2 = gcip_c2(gamma, params).verdict;
      const auto indicator = gcep_indicator_conditions(model, x_grid, params);
      entry.gcep_c1 = indicator.worst_c1.verdict;
      entry.gcep_c2 = indicator.worst_c2.verdict;
    }
    suite.delta_scan.push_back(entry);
  }

  if (model.associated()) {
    suite.cesaro_cov13 = assoc_cesaro_cov13(gamma, spec.cesaro_q_max);
    const LagCovariance transformed = uniform_transform_gamma(model);
    suite.cesaro_cov = assoc_cesaro_cov(transformed, spec.cesaro_q_max);
    suite.long_run_variance = long_run_variance(transformed, spec.lrv_truncation);
  } else {
    suite.long_run_variance = long_run_variance(uniform_transform_gamma(model), spec.lrv_truncation);
  }

  if (model.kind() == ModelKind::markov_chain) {
    suite.phi_profile = phi_mixing_profile(model.chain(), spec.r_max);
    for (int k = 1; k <= 9; ++k) suite.phi_checks.push_back(phi_decay_check(suite.phi_profile, 0.1 * k));
  }
  return suite;
}

}  // namespace gclab
