#pragma once

#include <optional>
#include <string>
#include <vector>

namespace gclab {

/// One-dimensional marginal law of a stationary sequence.
///
/// Supports the families the generators produce: continuous uniform and
/// normal laws, a point mass, and finitely supported discrete laws (the
/// stationary marginal of a finite Markov chain).
class Marginal {
 public:
  enum class Kind { uniform, normal, point, discrete };

  static Marginal uniform(double lo = 0.0, double hi = 1.0);
  static Marginal normal(double mean = 0.0, double sd = 1.0);
  static Marginal point(double value);
  /// Values need not be sorted or distinct; probabilities are merged per value.
  static Marginal discrete(const std::vector<double>& values, const std::vector<double>& probs);

  Kind kind() const noexcept { return kind_; }
  std::string label() const;

  /// F(x) = P(X <= x).
  double cdf(double x) const;
  /// F(x-) = P(X < x).
  double cdf_left(double x) const;
  /// Generalized inverse inf{x : F(x) >= p}; returns +-inf at the ends of unbounded supports.
  double quantile(double p) const;

  bool continuous() const noexcept { return kind_ == Kind::uniform || kind_ == Kind::normal; }
  /// Support points carrying positive mass (empty for continuous laws).
  const std::vector<double>& atoms() const noexcept { return atoms_; }
  const std::vector<double>& atom_probs() const noexcept { return atom_probs_; }

  double mean() const;
  double variance() const;
  /// sup of the Lebesgue density, when one exists.
  std::optional<double> density_bound() const;

  /// Parameters: (lo, hi) for uniform, (mean, sd) for normal, (value) for point.
  double param(int i) const { return params_[i]; }

 private:
  Marginal() = default;

  Kind kind_ = Kind::uniform;
  double params_[2] = {0.0, 1.0};
  std::vector<double> atoms_;
  std::vector<double> atom_probs_;
  std::vector<double> cumulative_;
};

/// Checks monotonicity and the 0/1 limits of the cdf on a grid spanning the support.
bool cdf_looks_valid(const Marginal& marginal, int grid_points = 1001);

}  // namespace gclab
