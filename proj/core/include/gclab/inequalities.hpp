#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gclab/empirical.hpp"
#include "gclab/markov.hpp"

namespace gclab {

/// A pair (X, Y) whose joint law is known exactly.
class BivariatePair {
 public:
  enum class Kind { gaussian, finite_joint, chain_lag };

  /// Standard bivariate normal with correlation rho in [0, 1).
  static BivariatePair gaussian(double rho);
  /// P(X = x_values[a], Y = y_values[b]) = joint[a][b].
  static BivariatePair finite_joint(std::vector<double> x_values, std::vector<double> y_values,
                                    std::vector<std::vector<double>> joint, std::string label = "finite-joint");
  /// (X_1, X_{1+lag}) of a stationary chain.
  static BivariatePair chain_lag(const MarkovChainSpec& spec, std::size_t lag);

  Kind kind() const noexcept { return kind_; }
  const std::string& label() const noexcept { return label_; }
  double rho() const noexcept { return rho_; }

  /// Cov(X, Y), exact.
  double covariance() const;
  /// Cov(f(X), g(Y)), exact; finite-support pairs only.
  double covariance_of(const Observable& f, const Observable& g) const;
  /// H(x, y) = P(X <= x, Y <= y) - P(X <= x) P(Y <= y), exact.
  double indicator_covariance(double x, double y) const;
  /// Bound on both marginal densities, when they exist.
  std::optional<double> density_bound() const;

  const std::vector<double>& x_values() const noexcept { return x_values_; }
  const std::vector<double>& y_values() const noexcept { return y_values_; }
  const std::vector<std::vector<double>>& joint() const noexcept { return joint_; }

 private:
  BivariatePair() = default;

  Kind kind_ = Kind::gaussian;
  std::string label_;
  double rho_ = 0.0;
  std::vector<double> x_values_;
  std::vector<double> y_values_;
  std::vector<std::vector<double>> joint_;
};

/// Observable together with a bound on |f'|.
struct SmoothObservable {
  Observable f;
  double derivative_bound = 1.0;
};

struct InequalityVerdict {
  std::string inequality_id;
  std::string pair;
  std::map<std::string, double> inputs;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  ///< rhs - lhs
  std::optional<double> std_error;
  bool holds = false;
  std::string mode;  ///< exact | estimated | stated | optimized
};

/// holds = lhs <= rhs + 3 stderr when estimated, lhs <= rhs + 1e-10 when exact.
InequalityVerdict make_verdict(std::string id, std::string pair, double lhs, double rhs,
                               std::optional<double> std_error, std::string mode);

struct MonteCarloOptions {
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// |Cov(f(X), g(Y))| <= Bf Bg Cov(X, Y). Exact on finite-support pairs,
/// Monte Carlo on Gaussian pairs.
InequalityVerdict check_newman(const BivariatePair& pair, const SmoothObservable& f, const SmoothObservable& g,
                               const MonteCarloOptions& mc = {});

/// M* = max(2/pi^2, 45 M).
double lemma_constant(double density_bound);

/// H(x, y) <= M* (T^2 Cov(X, Y) + 1/T).
InequalityVerdict check_indicator_cov_bound(const BivariatePair& pair, double x, double y, double T,
                                            double density_bound);

enum class ConstantMode { stated, optimized };

/// min_T M* (T^2 C + 1/T) / C^{1/3}, found by Brent minimization over log T.
double optimized_cov13_constant(double density_bound, double covariance);

/// H(x, y) <= c Cov^{1/3}(X, Y) with c = 1/M* (stated) or the T-optimized constant.
/// Both constants are recorded in `inputs`.
InequalityVerdict check_cov_one_third(const BivariatePair& pair, double x, double y, double density_bound,
                                      ConstantMode mode);

/// max_grid |H(x, y)| <= c M^{2/3} Cov^{1/3}; `inputs["ratio"]` is lhs / (M^{2/3} Cov^{1/3}).
InequalityVerdict check_bagai_prakasa(const BivariatePair& pair, const std::vector<double>& x_grid,
                                      const std::vector<double>& y_grid, double density_bound, double c);

/// Cov(f(X_1), g(X_{1+lag})) <= 2 phi(lag)^{1/p} ||f(X)||_p ||g(X)||_q, 1/p + 1/q = 1.
InequalityVerdict check_phi_covariance(const MarkovChainSpec& spec, std::size_t lag, const Observable& f,
                                       const Observable& g, double p);

struct BatteryOptions {
  std::uint64_t seed = 0;
  std::size_t newman_trials = 1000;
  std::size_t newman_samples = 10'000;
};

/// Every inequality over the bundled pairs: Gaussian pairs for the density
/// lemmas, finite-state chains for the phi-mixing bound, both for Newman.
std::vector<InequalityVerdict> run_inequality_battery(const BatteryOptions& options = {});

/// The two-state chain P = [[0.9, 0.1], [0.2, 0.8]] on values (0, 1).
MarkovChainSpec two_state_reference_chain();

}  // namespace gclab
