#include "gclab/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gclab/error.hpp"
#include "gclab/rng.hpp"

namespace gclab {
namespace {

/// -inf, midpoints between consecutive points, +inf.
std::vector<double> cut_points(std::span<const double> sorted) {
  std::vector<double> cuts{-INFINITY};
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) cuts.push_back(0.5 * (sorted[i] + sorted[i + 1]));
  cuts.push_back(INFINITY);
  return cuts;
}

}  // namespace

SetFamily SetFamily::half_lines() {
  SetFamily f;
  f.label = "half-lines";
  f.membership = [](const Parameter& theta, double x) { return x <= theta[0]; };
  f.critical_parameters = [](std::span<const double> sorted) {
    std::vector<Parameter> out;
    for (double c : cut_points(sorted)) out.push_back({c});
    return out;
  };
  return f;
}

SetFamily SetFamily::closed_intervals() {
  SetFamily f;
  f.label = "closed-intervals";
  f.membership = [](const Parameter& theta, double x) { return theta[0] <= x && x <= theta[1]; };
  f.critical_parameters = [](std::span<const double> sorted) {
    const auto cuts = cut_points(sorted);
    std::vector<Parameter> out{{1.0, 0.0}};  // empty interval
    for (std::size_t i = 0; i < cuts.size(); ++i)
      for (std::size_t j = i; j < cuts.size(); ++j) out.push_back({cuts[i], cuts[j]});
    return out;
  };
  return f;
}

SetFamily SetFamily::power_set(std::vector<double> universe) {
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  if (universe.size() > kMaxShatterPoints) fail(ErrorKind::capacity, "power_set: universe too large");
  SetFamily f;
  f.label = "power-set(" + std::to_string(universe.size()) + ")";
  // theta[0] encodes a bitmask over the universe.
  f.membership = [universe](const Parameter& theta, double x) {
    const auto mask = static_cast<std::uint64_t>(theta[0]);
    const auto it = std::lower_bound(universe.begin(), universe.end(), x);
    if (it == universe.end() || *it != x) return false;
    return ((mask >> (it - universe.begin())) & 1u) != 0;
  };
  f.critical_parameters = [size = universe.size()](std::span<const double>) {
    std::vector<Parameter> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << size); ++mask) out.push_back({static_cast<double>(mask)});
    return out;
  };
  f.universe = std::move(universe);
  return f;
}

bool shatters(std::span<const double> points, const SetFamily& family) {
  std::vector<double> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() > kMaxShatterPoints) {
    fail(ErrorKind::capacity, "shatters: at most " + std::to_string(kMaxShatterPoints) + " points supported");
  }
  const std::size_t n = sorted.size();
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<bool> picked(subsets, false);
  std::size_t distinct = 0;
  for (const auto& theta : family.critical_parameters(sorted)) {
    std::size_t mask = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (family.membership(theta, sorted[i])) mask |= std::size_t{1} << i;
    if (!picked[mask]) {
      picked[mask] = true;
      if (++distinct == subsets) return true;
    }
  }
  return false;
}

VcIndexResult vc_index(const SetFamily& family, std::size_t probe_budget, std::uint64_t seed) {
  constexpr int kPerturbations = 8;
  const std::size_t max_n = std::min(probe_budget, kMaxShatterPoints);
  CounterStream rng(seed, 0x5643ull);
  VcIndexResult result;
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::vector<std::vector<double>> configurations;
    if (family.universe) {
      const auto& u = *family.universe;
      if (n > u.size()) break;
      configurations.emplace_back(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(n));
      for (int k = 0; k < kPerturbations; ++k) {
        std::vector<double> shuffled = u;
        for (std::size_t i = shuffled.size(); i > 1; --i) {
          const auto pick = static_cast<std::size_t>(rng.next_uniform() * static_cast<double>(i));
          std::swap(shuffled[i - 1], shuffled[std::min(pick, i - 1)]);
        }
        configurations.emplace_back(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(n));
      }
    } else {
      std::vector<double> spaced(n);
      for (std::size_t i = 0; i < n; ++i) spaced[i] = static_cast<double>(i);
      configurations.push_back(spaced);
      for (int k = 0; k < kPerturbations; ++k) {
        std::vector<double> jittered = spaced;
        for (auto& x : jittered) x += 0.4 * (rng.next_uniform() - 0.5);
        configurations.push_back(jittered);
      }
    }
    bool any_shattered = false;
    for (const auto& configuration : configurations) {
      ++result.probes;
      if (shatters(configuration, family)) {
        any_shattered = true;
        break;
      }
    }
    if (!any_shattered) {
      result.index = n;
      return result;
    }
    result.largest_shattered = n;
  }
  result.indeterminate = true;
  return result;
}

double vc_entropy_bound(int index, double epsilon, double K, double r) {
  if (index < 1 || !(epsilon > 0.0) || !(K > 0.0) || !(r > 1.0)) {
    fail(ErrorKind::invalid_parameter, "vc_entropy_bound: need index >= 1, epsilon > 0, K > 0, r > 1");
  }
  const double I = index;
  return K * I * std::pow(4.0 * std::numbers::e, I) * std::pow(1.0 / epsilon, r * (I - 1.0));
}

BracketNet bracket_net_halflines(const Marginal& F, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    fail(ErrorKind::invalid_parameter, "bracket_net_halflines: epsilon must lie in (0,1]");
  }
  if (!F.continuous()) fail(ErrorKind::invalid_parameter, "bracket_net_halflines: F must be continuous");
  const auto p = static_cast<std::size_t>(std::ceil(1.0 / epsilon - 1e-12));
  BracketNet net;
  net.level = epsilon;
  net.norm = "L1";
  for (std::size_t k = 0; k <= p; ++k) net.grid.push_back(F.quantile(static_cast<double>(k) / static_cast<double>(p)));
  for (std::size_t k = 0; k < p; ++k) {
    const double lo = k == 0 ? -INFINITY : net.grid[k];
    const double hi = k + 1 == p ? INFINITY : net.grid[k + 1];
    Bracket b;
    b.lower = Observable::indicator_le(lo);
    b.upper = Observable::indicator_le(hi);
    b.lower_mean = static_cast<double>(k) / static_cast<double>(p);
    b.upper_mean = static_cast<double>(k + 1) / static_cast<double>(p);
    net.brackets.push_back(std::move(b));
  }
  return net;
}

EntropyReport halfline_entropy_report(const Marginal& F, double epsilon, double K, double r) {
  const BracketNet net = bracket_net_halflines(F, epsilon);
  const VcIndexResult vc = vc_index(SetFamily::half_lines());
  EntropyReport report;
  report.family = "half-lines";
  report.epsilon = epsilon;
  report.norm = net.norm;
  report.bracket_count = net.brackets.size();
  report.construction = net.grid;
  report.vc_index = vc.index;
  report.largest_shattered = vc.largest_shattered;
  report.K = K;
  report.r = r;
  if (vc.index) report.vc_bound = vc_entropy_bound(static_cast<int>(*vc.index), epsilon, K, r);
  return report;
}

}  // namespace gclab
