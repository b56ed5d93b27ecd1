#include "gclab/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gclab/error.hpp"
#include "gclab/fit.hpp"
#include "gclab/numeric.hpp"

namespace gclab {

void GcipParams::validate() const {
  if (!(delta > 0.0 && delta < 3.0)) fail(ErrorKind::invalid_parameter, "delta must satisfy delta ∈ (0,3)");
  if (q_max < 4) fail(ErrorKind::invalid_parameter, "q_max must be >= 4");
}

const char* to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::bounded: return "bounded";
    case Verdict::diverging: return "diverging";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "unknown";
}

namespace {

/// Indices of the top half of a grid of length n.
std::size_t top_half_start(std::size_t n) { return n / 2; }

std::optional<double> tail_log_slope(std::span<const std::size_t> grid, std::span<const double> values) {
  std::vector<double> x, y;
  for (std::size_t i = top_half_start(grid.size()); i < grid.size(); ++i) {
    if (values[i] > 0.0) {
      x.push_back(static_cast<double>(grid[i]));
      y.push_back(values[i]);
    }
  }
  if (x.size() < 3) return std::nullopt;
  return fit_log_log(x, y).slope;
}

bool tail_identically_zero(std::span<const double> values) {
  for (std::size_t i = top_half_start(values.size()); i < values.size(); ++i)
    if (values[i] != 0.0) return false;
  return true;
}

std::string format_id(const char* base, double delta) {
  std::ostringstream os;
  os << base << "(delta=" << delta << ")";
  return os.str();
}

}  // namespace

void classify(ConditionReport& report, const VerdictThresholds& thresholds) {
  report.running_sup = report.statistic.empty()
                           ? 0.0
                           : *std::max_element(report.statistic.begin(), report.statistic.end());
  report.fitted_exponent = tail_log_slope(report.q_grid, report.statistic);
  if (!report.fitted_exponent) {
    report.verdict = tail_identically_zero(report.statistic) ? Verdict::bounded : Verdict::indeterminate;
  } else if (*report.fitted_exponent <= thresholds.bounded_slope) {
    report.verdict = Verdict::bounded;
  } else if (*report.fitted_exponent >= thresholds.diverging_slope) {
    report.verdict = Verdict::diverging;
  } else {
    report.verdict = Verdict::indeterminate;
  }
}

double variance_expansion(std::span<const double> gamma, std::size_t q) {
  if (q == 0) fail(ErrorKind::invalid_parameter, "variance_expansion: q must be >= 1");
  if (gamma.size() < q) fail(ErrorKind::invalid_input, "variance_expansion: gamma table shorter than q");
  CompensatedSum acc;
  acc.add(static_cast<double>(q) * gamma[0]);
  for (std::size_t j = 1; j < q; ++j) acc.add(2.0 * static_cast<double>(q - j) * gamma[j]);
  return acc.value();
}

double variance_expansion(const LagCovariance& gamma, std::size_t q) {
  if (q == 0) fail(ErrorKind::invalid_parameter, "variance_expansion: q must be >= 1");
  return variance_expansion(gamma.values(q), q);
}

std::vector<double> variance_expansions(std::span<const double> gamma, std::size_t q_max) {
  if (gamma.size() < q_max) fail(ErrorKind::invalid_input, "variance_expansions: gamma table shorter than q_max");
  // V(q+1) = V(q) + gamma(0) + 2 sum_{j=1}^{q} gamma(j).
  std::vector<double> out;
  out.reserve(q_max);
  CompensatedSum v, partial;
  for (std::size_t q = 1; q <= q_max; ++q) {
    if (q > 1) partial.add(gamma[q - 1]);
    v.add(gamma[0] + 2.0 * partial.value());
    out.push_back(v.value());
  }
  return out;
}

ConditionReport gcip_c1(const LagCovariance& gamma, const GcipParams& params, const VerdictThresholds& thresholds) {
  params.validate();
  const auto table = gamma.values(params.q_max);
  const auto v = variance_expansions(table, params.q_max);
  ConditionReport report;
  report.condition_id = format_id("C1", params.delta);
  report.params = params;
  const double power = 0.5 * (3.0 - params.delta);
  for (std::size_t q = 1; q <= params.q_max; ++q) {
    report.q_grid.push_back(q);
    report.statistic.push_back(v[q - 1] / std::pow(static_cast<double>(q), power));
  }
  classify(report, thresholds);
  return report;
}

ConditionReport gcip_c2(const LagCovariance& gamma, const GcipParams& params, const VerdictThresholds& thresholds) {
  params.validate();
  const std::size_t longest = 2 * params.q_max + 1;
  const auto table = gamma.values(longest);
  const auto v = variance_expansions(table, longest);
  ConditionReport report;
  report.condition_id = format_id("C2", params.delta);
  report.params = params;
  const double power = 3.0 - params.delta;
  double block_max = -INFINITY;
  std::size_t covered = 0;
  for (std::size_t q = 1; q <= params.q_max; ++q) {
    for (; covered < 2 * q + 1; ++covered) block_max = std::max(block_max, v[covered]);
    report.q_grid.push_back(q);
    report.statistic.push_back(block_max / std::pow(static_cast<double>(q), power));
  }
  classify(report, thresholds);
  return report;
}

namespace {

int severity(Verdict v) {
  switch (v) {
    case Verdict::bounded: return 0;
    case Verdict::indeterminate: return 1;
    case Verdict::diverging: return 2;
  }
  return 0;
}

const ConditionReport& worse(const ConditionReport& a, const ConditionReport& b) {
  if (severity(a.verdict) != severity(b.verdict)) return severity(a.verdict) > severity(b.verdict) ? a : b;
  return b.running_sup > a.running_sup ? b : a;
}

}  // namespace

IndicatorConditions gcep_indicator_conditions(const StationaryModel& model, const std::vector<double>& x_grid,
                                              const GcipParams& params, const VerdictThresholds& thresholds) {
  params.validate();
  if (x_grid.empty()) fail(ErrorKind::invalid_parameter, "gcep_indicator_conditions: empty x grid");
  IndicatorConditions out;
  out.x_grid = x_grid;
  for (double x : x_grid) {
    // One table serves both conditions.
    const auto table = indicator_gamma(model, x).values(2 * params.q_max + 1);
    const auto shared = LagCovariance::from_values(table, "indicator");
    std::ostringstream suffix;
    suffix << "@x=" << x;
    auto c1 = gcip_c1(shared, params, thresholds);
    auto c2 = gcip_c2(shared, params, thresholds);
    c1.condition_id = "gcep-" + c1.condition_id + suffix.str();
    c2.condition_id = "gcep-" + c2.condition_id + suffix.str();
    out.c1.push_back(std::move(c1));
    out.c2.push_back(std::move(c2));
  }
  out.worst_c1 = out.c1.front();
  out.worst_c2 = out.c2.front();
  for (std::size_t i = 1; i < x_grid.size(); ++i) {
    out.worst_c1 = worse(out.worst_c1, out.c1[i]);
    out.worst_c2 = worse(out.worst_c2, out.c2[i]);
  }
  return out;
}

namespace {

CesaroReport cesaro_condition(const LagCovariance& gamma, std::size_t q_max, const CesaroThresholds& thresholds,
                              bool cube_root, const char* id) {
  if (q_max < 2) fail(ErrorKind::invalid_parameter, "Cesaro condition needs q_max >= 2");
  const auto table = gamma.values(q_max);
  CesaroReport report;
  report.condition_id = id;
  report.thresholds = thresholds;
  CompensatedSum running;
  for (std::size_t q = 2; q <= q_max; ++q) {
    const double g = table[q - 1];
    if (g < 0.0) {
      std::ostringstream os;
      os << id << ": gamma(" << q - 1 << ") = " << g << " < 0 violates association";
      fail(ErrorKind::association_violation, os.str());
    }
    running.add(cube_root ? std::cbrt(g) : g);
    report.q_grid.push_back(q);
    report.values.push_back(running.value() / static_cast<double>(q));
  }
  report.final_value = report.values.back();
  report.fitted_slope = tail_log_slope(report.q_grid, report.values);
  if (!report.fitted_slope) {
    report.to_zero = tail_identically_zero(report.values);
  } else {
    report.to_zero = *report.fitted_slope <= thresholds.slope && report.final_value < thresholds.final_value;
  }
  return report;
}

}  // namespace

CesaroReport assoc_cesaro_cov13(const LagCovariance& gamma, std::size_t q_max, const CesaroThresholds& thresholds) {
  return cesaro_condition(gamma, q_max, thresholds, true, "cesaro-cov13");
}

CesaroReport assoc_cesaro_cov(const LagCovariance& gamma, std::size_t q_max, const CesaroThresholds& thresholds) {
  return cesaro_condition(gamma, q_max, thresholds, false, "cesaro-cov");
}

LongRunVariance long_run_variance(const LagCovariance& gamma, std::size_t truncation) {
  const auto table = gamma.values(truncation + 1);
  LongRunVariance out;
  out.truncation = truncation;
  CompensatedSum acc;
  acc.add(table[0]);
  for (std::size_t j = 1; j <= truncation; ++j) acc.add(2.0 * table[j]);
  out.value = acc.value();

  // Fit log|gamma(j)| = a + j log(ratio) over the upper half of 1..truncation.
  std::vector<double> lags, logs;
  bool all_zero = true;
  for (std::size_t j = std::max<std::size_t>(1, truncation / 2); j <= truncation; ++j) {
    if (table[j] != 0.0) {
      all_zero = false;
      lags.push_back(static_cast<double>(j));
      logs.push_back(std::log(std::abs(table[j])));
    }
  }
  if (truncation == 0) {
    out.tail_flag = true;
    return out;
  }
  if (all_zero) {
    out.tail_estimate = 0.0;
    return out;
  }
  if (lags.size() < 3) {
    out.tail_flag = true;
    return out;
  }
  const double ratio = std::exp(fit_line(lags, logs).slope);
  if (ratio >= 1.0 - 1e-6) {
    out.tail_flag = true;
    return out;
  }
  const double tail = 2.0 * std::abs(table[truncation]) * ratio / (1.0 - ratio);
  out.tail_estimate = tail;
  out.tail_flag = tail > 1e-6 + 1e-3 * std::abs(out.value);
  return out;
}

PhiDecayReport phi_decay_check(std::span<const double> profile, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) fail(ErrorKind::invalid_parameter, "phi_decay_check: delta must lie in (0,1)");
  if (profile.size() < 2) fail(ErrorKind::invalid_input, "phi_decay_check: profile too short");
  for (std::size_t r = 0; r < profile.size(); ++r) {
    if (!(profile[r] >= 0.0 && profile[r] <= 1.0)) {
      fail(ErrorKind::invalid_input, "phi_decay_check: profile values must lie in [0,1]");
    }
    if (r > 0 && profile[r] > profile[r - 1] * (1.0 + 1e-9) + 1e-300) {
      fail(ErrorKind::invalid_input, "phi_decay_check: profile is not nonincreasing");
    }
  }
  PhiDecayReport report;
  report.delta = delta;
  report.required_exponent = -4.0 / (1.0 - delta);
  report.eventually_zero = profile.back() == 0.0;
  std::vector<std::size_t> grid(profile.size());
  for (std::size_t r = 0; r < grid.size(); ++r) grid[r] = r + 1;
  report.fitted_exponent = tail_log_slope(grid, profile);
  report.pass = report.eventually_zero ||
                (report.fitted_exponent && *report.fitted_exponent <= report.required_exponent + 0.1);
  return report;
}

std::vector<double> cesaro_mean(std::span<const double> x) {
  if (x.empty()) fail(ErrorKind::invalid_input, "cesaro_mean: empty sequence");
  std::vector<double> out;
  out.reserve(x.size());
  CompensatedSum acc;
  for (std::size_t n = 0; n < x.size(); ++n) {
    acc.add(x[n]);
    out.push_back(acc.value() / static_cast<double>(n + 1));
  }
  return out;
}

std::vector<double> kronecker_weighted(std::span<const double> b, std::span<const double> x) {
  if (b.size() != x.size()) fail(ErrorKind::invalid_input, "kronecker_weighted: b and x differ in length");
  if (b.empty()) fail(ErrorKind::invalid_input, "kronecker_weighted: empty sequence");
  std::vector<double> out;
  out.reserve(x.size());
  CompensatedSum acc;
  for (std::size_t n = 0; n < x.size(); ++n) {
    if (!(b[n] > 0.0)) fail(ErrorKind::invalid_parameter, "kronecker_weighted: weights must be positive");
    if (n > 0 && b[n] < b[n - 1]) fail(ErrorKind::invalid_parameter, "kronecker_weighted: weights must be nondecreasing");
    acc.add(b[n] * x[n]);
    out.push_back(acc.value() / b[n]);
  }
  return out;
}

}  // namespace gclab
