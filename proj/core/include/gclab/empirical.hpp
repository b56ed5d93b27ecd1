#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gclab/generators.hpp"
#include "gclab/marginal.hpp"

namespace gclab {

/// Real function on the state space, f in L2(P_X) by the caller's declaration.
struct Observable {
  std::function<double(double)> eval;
  std::string label;

  double operator()(double x) const { return eval(x); }

  static Observable identity();
  static Observable constant(double c);
  /// 1{t <= x}; x = -inf gives the zero function, x = +inf the one function.
  static Observable indicator_le(double x);
  /// a f + b g
  static Observable linear_combination(double a, const Observable& f, double b, const Observable& g);
};

/// P_n(f) = (1/n) sum f(X_i), compensated.
double empirical_measure(std::span<const double> path, const Observable& f);

/// P_n(C) = (1/n) Card{i : X_i in C}.
double empirical_set_measure(std::span<const double> path, const std::function<bool(double)>& member);

/// F_n(x).
double empirical_cdf(std::span<const double> path, double x);

/// sup_x |F_n(x) - F(x)|, exact: evaluated at both one-sided limits of every
/// jump of F_n and of F.
double ks_sup_deviation(std::span<const double> path, const Marginal& F);
/// Same as above on an already sorted path.
double ks_sup_deviation_sorted(std::span<const double> sorted_path, const Marginal& F);

/// U_i = F(X_i).
Path probability_integral_transform(const Path& path, const Marginal& F);

struct Bracket {
  Observable lower;
  Observable upper;
  double lower_mean = 0.0;  ///< E[lower(X)], exact
  double upper_mean = 0.0;  ///< E[upper(X)], exact
};

/// Finite epsilon-net of brackets. For half-line nets `grid` holds the
/// thresholds x_0 < ... < x_p with bracket k = [1{<= x_k}, 1{<= x_{k+1}}].
struct BracketNet {
  double level = 1.0;
  std::vector<Bracket> brackets;
  std::vector<double> grid;
  std::string norm = "L1";

  /// Throws invalid-input unless lower <= upper on `test_points` and every
  /// expected width is at most level + 1e-12.
  void validate(std::span<const double> test_points) const;
};

/// epsilon + max_i max(E[l_i] - P_n(l_i), P_n(u_i) - E[u_i]).
double bracket_sup_bound(std::span<const double> path, const BracketNet& net);

struct DeviationStats {
  std::size_t n = 0;
  double mean = 0.0;
  double median = 0.0;
  double q90 = 0.0;
};

/// Sup-deviation statistics across Monte Carlo replicates for each n.
struct DeviationPath {
  std::vector<DeviationStats> rows;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  std::string model_id;

  /// CSV with columns n,mean,median,q90,reps,seed; shortest round-trip doubles.
  void write_csv(std::ostream& os) const;
};

struct DiagnosticOptions {
  unsigned threads = 1;
};

/// For every n in `n_grid`, simulates `reps` paths (replicate r of grid point
/// k uses stream replicate_stream(k, r)) and aggregates KS sup-deviations.
/// Output is identical for every thread count.
DeviationPath run_gc_diagnostic(const StationaryModel& model, const std::vector<std::size_t>& n_grid,
                                std::size_t reps, std::uint64_t seed, DiagnosticOptions options = {});

/// Type-7 (linear interpolation) sample quantile of sorted data.
double sorted_quantile(std::span<const double> sorted, double p);

}  // namespace gclab
