#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "gclab/lag_covariance.hpp"
#include "gclab/marginal.hpp"
#include "gclab/markov.hpp"

namespace gclab {

enum class ModelKind {
  iid,
  gaussian_ar1,
  moving_average,
  markov_chain,
  perfect,  ///< X_i = X_1 for every i
};

const char* to_string(ModelKind kind) noexcept;

/// Immutable description of a stationary sequence: dependence mechanism,
/// marginal law and (for every bundled family) the analytic lag covariance of
/// the identity observable.
class StationaryModel {
 public:
  ModelKind kind() const noexcept { return kind_; }
  const std::string& id() const noexcept { return id_; }
  const Marginal& marginal() const noexcept { return marginal_; }
  double marginal_cdf(double x) const { return marginal_.cdf(x); }

  /// Cov(X_1, X_{1+j}).
  double analytic_gamma(std::size_t j) const;
  /// Nonnegative-correlation Gaussian and nonnegative MA families, iid and perfect sequences.
  bool associated() const noexcept { return kind_ != ModelKind::markov_chain; }

  double rho() const noexcept { return rho_; }
  const std::vector<double>& ma_coeffs() const noexcept { return coeffs_; }
  double innovation_sd() const noexcept { return innovation_sd_; }
  const MarkovChainSpec& chain() const;

  /// Correlation gamma(j)/gamma(0) for the Gaussian families (ar1, moving average).
  double gaussian_correlation(std::size_t j) const;
  bool gaussian() const noexcept {
    return kind_ == ModelKind::gaussian_ar1 || kind_ == ModelKind::moving_average;
  }

 private:
  friend StationaryModel make_iid(const Marginal&);
  friend StationaryModel make_gaussian_ar1(double);
  friend StationaryModel make_moving_average(const std::vector<double>&, double);
  friend StationaryModel make_markov_chain(const MarkovChainSpec&);
  friend StationaryModel make_perfectly_dependent(const Marginal&);

  explicit StationaryModel(Marginal marginal) : marginal_(std::move(marginal)) {}

  ModelKind kind_ = ModelKind::iid;
  std::string id_;
  Marginal marginal_;
  double rho_ = 0.0;
  std::vector<double> coeffs_;
  double innovation_sd_ = 1.0;
  std::shared_ptr<const MarkovChainSpec> chain_;
};

StationaryModel make_iid(const Marginal& marginal);
/// X_{i+1} = rho X_i + sqrt(1 - rho^2) e_{i+1}, standard normal marginal; rho in [0, 1).
StationaryModel make_gaussian_ar1(double rho);
/// X_i = sum_k a_k e_{i-k} with Gaussian innovations of sd `innovation_sd`; all a_k >= 0.
StationaryModel make_moving_average(const std::vector<double>& coeffs, double innovation_sd = 1.0);
StationaryModel make_markov_chain(const MarkovChainSpec& spec);
StationaryModel make_perfectly_dependent(const Marginal& marginal);

struct Path {
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::string model_id;

  std::size_t size() const noexcept { return values.size(); }
};

/// Stationary path of length n; a pure function of (model, n, seed, stream).
Path sample(const StationaryModel& model, std::size_t n, std::uint64_t seed, std::uint64_t stream = 0);

/// Single-column CSV with header `value`.
void write_path_csv(std::ostream& os, const Path& path);

struct CovarianceEstimate {
  double value = 0.0;
  double std_error = 0.0;
  bool estimated = false;
};

/// Analytic Cov(X_1, X_{1+j}) when available, otherwise a Monte Carlo
/// estimate over a path of `budget` steps with a batch-means standard error.
CovarianceEstimate lag_covariance(const StationaryModel& model, std::size_t j, std::size_t budget = 1'000'000,
                                  std::uint64_t seed = 0);

/// Sample covariance at lag j over one simulated path; always estimated.
CovarianceEstimate estimate_lag_covariance(const StationaryModel& model, std::size_t j, std::size_t budget,
                                           std::uint64_t seed);

/// H_x(j) = P(X_1 <= x, X_{1+j} <= x) - F(x)^2, exact for every bundled family.
double indicator_lag_covariance(const StationaryModel& model, double x, std::size_t j);

/// gamma of the identity observable.
LagCovariance identity_gamma(const StationaryModel& model);
/// gamma of 1{X <= x}; gamma(0) = F(x)(1 - F(x)).
LagCovariance indicator_gamma(const StationaryModel& model, double x);
/// gamma of U = F(X), the probability-integral transform.
LagCovariance uniform_transform_gamma(const StationaryModel& model);

}  // namespace gclab
