#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gclab/generators.hpp"
#include "gclab/lag_covariance.hpp"

namespace gclab {

/// Exponent delta of the normalized-variance conditions and the largest q probed.
struct GcipParams {
  double delta = 1.0;
  std::size_t q_max = 1000;

  /// (1 - delta) / 2, meaningful for delta in (0, 1).
  double nu() const noexcept { return 0.5 * (1.0 - delta); }
  /// Throws invalid-parameter unless 0 < delta < 3 and q_max >= 4.
  void validate() const;
};

enum class Verdict { bounded, diverging, indeterminate };
const char* to_string(Verdict verdict) noexcept;

/// Slope cut-offs for classifying a statistic sequence from its log-log trend.
struct VerdictThresholds {
  double bounded_slope = 0.05;
  double diverging_slope = 0.2;
};

/// Finite-q rendering of a "sup over q < infinity" condition.
struct ConditionReport {
  std::string condition_id;
  GcipParams params;
  std::vector<std::size_t> q_grid;
  std::vector<double> statistic;
  double running_sup = 0.0;
  /// Slope of log statistic against log q over the top half of the q grid.
  std::optional<double> fitted_exponent;
  Verdict verdict = Verdict::indeterminate;
};

/// Classifies a positive sequence by its log-log slope over the top half of `q_grid`.
void classify(ConditionReport& report, const VerdictThresholds& thresholds = {});

/// Var(sum_{i=1}^q g(X_i)) = q gamma(0) + 2 sum_{j=1}^{q-1} (q - j) gamma(j).
/// `gamma` must hold at least q values.
double variance_expansion(std::span<const double> gamma, std::size_t q);
double variance_expansion(const LagCovariance& gamma, std::size_t q);
/// variance_expansion for q = 1..q_max in one pass (entry q-1 holds q).
std::vector<double> variance_expansions(std::span<const double> gamma, std::size_t q_max);

/// C1: Var(q^{-(3-delta)/4} sum_{i<=q} g(X_i)) for q = 1..q_max.
ConditionReport gcip_c1(const LagCovariance& gamma, const GcipParams& params, const VerdictThresholds& thresholds = {});

/// C2: max over block lengths m in 1..2q+1 of Var(sum of m consecutive terms) / q^{3-delta}.
/// Stationarity makes the start of the block irrelevant.
ConditionReport gcip_c2(const LagCovariance& gamma, const GcipParams& params, const VerdictThresholds& thresholds = {});

struct IndicatorConditions {
  std::vector<double> x_grid;
  std::vector<ConditionReport> c1;
  std::vector<ConditionReport> c2;
  ConditionReport worst_c1;
  ConditionReport worst_c2;
};

/// C1/C2 for the indicator observables 1{X <= x}, x in `x_grid`.
IndicatorConditions gcep_indicator_conditions(const StationaryModel& model, const std::vector<double>& x_grid,
                                              const GcipParams& params, const VerdictThresholds& thresholds = {});

struct CesaroThresholds {
  double slope = -0.2;
  double final_value = 0.05;
};

struct CesaroReport {
  std::string condition_id;
  std::vector<std::size_t> q_grid;  ///< 2..q_max
  std::vector<double> values;       ///< a_q
  std::optional<double> fitted_slope;
  double final_value = 0.0;
  bool to_zero = false;
  CesaroThresholds thresholds;
};

/// a_q = (1/q) sum_{j=2}^q gamma(j-1)^{1/3}; throws association-violation on negative gamma.
CesaroReport assoc_cesaro_cov13(const LagCovariance& gamma, std::size_t q_max, const CesaroThresholds& thresholds = {});
/// a_q = (1/q) sum_{j=2}^q gamma(j-1).
CesaroReport assoc_cesaro_cov(const LagCovariance& gamma, std::size_t q_max, const CesaroThresholds& thresholds = {});

struct LongRunVariance {
  double value = 0.0;
  std::size_t truncation = 0;
  /// Geometric extrapolation of the neglected tail 2 sum_{j > truncation} gamma(j).
  std::optional<double> tail_estimate;
  /// Raised when the tail shows no geometric decay or is not negligible.
  bool tail_flag = false;
};

/// gamma(0) + 2 sum_{j=1}^{truncation} gamma(j).
LongRunVariance long_run_variance(const LagCovariance& gamma, std::size_t truncation);

struct PhiDecayReport {
  double delta = 0.5;
  double required_exponent = 0.0;  ///< -4 / (1 - delta)
  std::optional<double> fitted_exponent;
  bool eventually_zero = false;
  bool pass = false;
};

/// Checks phi(r) = O(r^{-4/(1-delta)}) on the tail of an exact profile.
PhiDecayReport phi_decay_check(std::span<const double> phi_profile, double delta);

/// y_n = (x_1 + ... + x_n) / n.
std::vector<double> cesaro_mean(std::span<const double> x);

/// z_n = (sum_{k<=n} b_k x_k) / b_n for positive nondecreasing b.
std::vector<double> kronecker_weighted(std::span<const double> b, std::span<const double> x);

}  // namespace gclab
