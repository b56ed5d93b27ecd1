#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gclab/empirical.hpp"
#include "gclab/marginal.hpp"

namespace gclab {

/// A class of subsets of the real line, indexed by a parameter vector.
///
/// `critical_parameters` lists, for a finite point set, parameters that
/// realize every achievable trace points ∩ C. That turns shattering into a
/// finite enumeration.
struct SetFamily {
  using Parameter = std::vector<double>;

  std::string label;
  std::function<bool(const Parameter& theta, double x)> membership;
  std::function<std::vector<Parameter>(std::span<const double> sorted_points)> critical_parameters;
  /// Finite ground set, when the family lives on one.
  std::optional<std::vector<double>> universe;

  /// Half-lines (-inf, theta].
  static SetFamily half_lines();
  /// Closed intervals [a, b] (and the empty set).
  static SetFamily closed_intervals();
  /// Every subset of a finite universe.
  static SetFamily power_set(std::vector<double> universe);
};

constexpr std::size_t kMaxShatterPoints = 20;

/// True iff every subset of `points` is picked out by the family. Exhaustive
/// over the 2^|B| subsets; throws capacity beyond kMaxShatterPoints distinct points.
bool shatters(std::span<const double> points, const SetFamily& family);

struct VcIndexResult {
  /// Smallest cardinality with no probed shattered set; empty when indeterminate.
  std::optional<std::size_t> index;
  std::size_t largest_shattered = 0;
  bool indeterminate = false;
  std::size_t probes = 0;
};

/// Probes cardinalities n = 1, 2, ... up to `probe_budget` (at most
/// kMaxShatterPoints) with an equally spaced configuration and seeded
/// random perturbations of it.
VcIndexResult vc_index(const SetFamily& family, std::size_t probe_budget = kMaxShatterPoints,
                       std::uint64_t seed = 0);

/// K I (4e)^I (1/eps)^{r (I - 1)}.
double vc_entropy_bound(int index, double epsilon, double K = 1.0, double r = 2.0);

/// Quantile grid net for {1(-inf, x] : x real}: p = ceil(1/eps) brackets,
/// each of exact cdf width 1/p. The outer brackets use the zero and one
/// functions so the net covers the class pointwise on the whole line.
BracketNet bracket_net_halflines(const Marginal& F, double epsilon);

struct EntropyReport {
  std::string family;
  double epsilon = 1.0;
  std::string norm = "L1";
  std::size_t bracket_count = 0;
  std::vector<double> construction;
  std::optional<std::size_t> vc_index;
  std::optional<std::size_t> largest_shattered;
  double K = 1.0;
  double r = 2.0;
  std::optional<double> vc_bound;
};

/// Half-line report at level eps: bracket count, VC index and the entropy bound.
EntropyReport halfline_entropy_report(const Marginal& F, double epsilon, double K = 1.0, double r = 2.0);

}  // namespace gclab
