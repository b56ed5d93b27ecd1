#include "gclab/empirical.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>
#include <thread>

#include "gclab/error.hpp"
#include "gclab/numeric.hpp"
#include "gclab/rng.hpp"

namespace gclab {

Observable Observable::identity() {
  return {[](double x) { return x; }, "identity"};
}

Observable Observable::constant(double c) {
  std::ostringstream os;
  os << "constant(" << c << ")";
  return {[c](double) { return c; }, os.str()};
}

Observable Observable::indicator_le(double x) {
  std::ostringstream os;
  os << "1{<=" << x << "}";
  return {[x](double t) { return t <= x ? 1.0 : 0.0; }, os.str()};
}

Observable Observable::linear_combination(double a, const Observable& f, double b, const Observable& g) {
  std::ostringstream os;
  os << a << "*" << f.label << "+" << b << "*" << g.label;
  return {[a, b, f = f.eval, g = g.eval](double x) { return a * f(x) + b * g(x); }, os.str()};
}

namespace {

void require_nonempty(std::span<const double> path, const char* op) {
  if (path.empty()) fail(ErrorKind::invalid_input, std::string(op) + ": empty path");
}

}  // namespace

double empirical_measure(std::span<const double> path, const Observable& f) {
  require_nonempty(path, "empirical_measure");
  CompensatedSum acc;
  for (double x : path) acc.add(f(x));
  return acc.value() / static_cast<double>(path.size());
}

double empirical_set_measure(std::span<const double> path, const std::function<bool(double)>& member) {
  require_nonempty(path, "empirical_set_measure");
  std::size_t count = 0;
  for (double x : path) count += member(x) ? 1 : 0;
  return static_cast<double>(count) / static_cast<double>(path.size());
}

double empirical_cdf(std::span<const double> path, double x) {
  require_nonempty(path, "empirical_cdf");
  const auto count = std::count_if(path.begin(), path.end(), [x](double v) { return v <= x; });
  return static_cast<double>(count) / static_cast<double>(path.size());
}

double ks_sup_deviation_sorted(std::span<const double> sorted, const Marginal& F) {
  require_nonempty(sorted, "ks_sup_deviation");
  const double n = static_cast<double>(sorted.size());
  double worst = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double v = sorted[i];
    // F_n(v-) = i/n, F_n(v) = j/n.
    worst = std::max(worst, std::abs(static_cast<double>(j) / n - F.cdf(v)));
    worst = std::max(worst, std::abs(static_cast<double>(i) / n - F.cdf_left(v)));
    i = j;
  }
  // Atoms of F not hit by the path are jump points of F with F_n flat there.
  for (double a : F.atoms()) {
    const auto below = std::lower_bound(sorted.begin(), sorted.end(), a) - sorted.begin();
    const auto at_or_below = std::upper_bound(sorted.begin(), sorted.end(), a) - sorted.begin();
    worst = std::max(worst, std::abs(static_cast<double>(at_or_below) / n - F.cdf(a)));
    worst = std::max(worst, std::abs(static_cast<double>(below) / n - F.cdf_left(a)));
  }
  return worst;
}

double ks_sup_deviation(std::span<const double> path, const Marginal& F) {
  require_nonempty(path, "ks_sup_deviation");
  std::vector<double> sorted(path.begin(), path.end());
  std::sort(sorted.begin(), sorted.end());
  return ks_sup_deviation_sorted(sorted, F);
}

Path probability_integral_transform(const Path& path, const Marginal& F) {
  Path out;
  out.seed = path.seed;
  out.model_id = path.model_id + ":cdf-transform";
  out.values.reserve(path.size());
  for (double x : path.values) out.values.push_back(F.cdf(x));
  return out;
}

void BracketNet::validate(std::span<const double> test_points) const {
  if (brackets.empty()) fail(ErrorKind::invalid_input, "bracket net is empty");
  if (!(level > 0.0)) fail(ErrorKind::invalid_input, "bracket net level must be > 0");
  for (std::size_t i = 0; i < brackets.size(); ++i) {
    const auto& b = brackets[i];
    if (b.upper_mean - b.lower_mean > level + 1e-12) {
      fail(ErrorKind::invalid_input, "bracket " + std::to_string(i) + " is wider than the net level");
    }
    for (double t : test_points) {
      if (b.lower(t) > b.upper(t)) {
        fail(ErrorKind::invalid_input, "bracket " + std::to_string(i) + " has lower > upper");
      }
    }
  }
}

double bracket_sup_bound(std::span<const double> path, const BracketNet& net) {
  require_nonempty(path, "bracket_sup_bound");
  if (net.brackets.empty()) fail(ErrorKind::invalid_input, "bracket_sup_bound: empty net");
  double worst = -INFINITY;
  for (const auto& b : net.brackets) {
    worst = std::max(worst, b.lower_mean - empirical_measure(path, b.lower));
    worst = std::max(worst, empirical_measure(path, b.upper) - b.upper_mean);
  }
  return net.level + worst;
}

double sorted_quantile(std::span<const double> sorted, double p) {
  if (sorted.empty()) fail(ErrorKind::invalid_input, "quantile of empty data");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

void DeviationPath::write_csv(std::ostream& os) const {
  auto put = [&os](double v) {
    char buffer[32];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, v);
    os.write(buffer, result.ptr - buffer);
  };
  os << "n,mean,median,q90,reps,seed\n";
  for (const auto& row : rows) {
    os << row.n << ',';
    put(row.mean);
    os << ',';
    put(row.median);
    os << ',';
    put(row.q90);
    os << ',' << reps << ',' << seed << '\n';
  }
}

DeviationPath run_gc_diagnostic(const StationaryModel& model, const std::vector<std::size_t>& n_grid,
                                std::size_t reps, std::uint64_t seed, DiagnosticOptions options) {
  if (n_grid.empty()) fail(ErrorKind::invalid_parameter, "run_gc_diagnostic: empty n grid");
  for (std::size_t k = 0; k < n_grid.size(); ++k) {
    if (n_grid[k] == 0 || (k > 0 && n_grid[k] <= n_grid[k - 1])) {
      fail(ErrorKind::invalid_parameter, "run_gc_diagnostic: n grid must be positive and strictly increasing");
    }
  }
  if (reps == 0) fail(ErrorKind::invalid_parameter, "run_gc_diagnostic: reps must be >= 1");

  const std::size_t tasks = n_grid.size() * reps;
  std::vector<double> deviations(tasks);
  std::atomic<std::size_t> next{0};

  // Each task writes only its own slot, so aggregation order is fixed by index.
  auto worker = [&]() {
    for (std::size_t t = next.fetch_add(1); t < tasks; t = next.fetch_add(1)) {
      const std::size_t k = t / reps;
      const std::size_t r = t % reps;
      Path path = sample(model, n_grid[k], seed, replicate_stream(k, r));
      std::sort(path.values.begin(), path.values.end());
      deviations[t] = ks_sup_deviation_sorted(path.values, model.marginal());
    }
  };
  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  DeviationPath out;
  out.reps = reps;
  out.seed = seed;
  out.model_id = model.id();
  for (std::size_t k = 0; k < n_grid.size(); ++k) {
    std::vector<double> block(deviations.begin() + static_cast<std::ptrdiff_t>(k * reps),
                              deviations.begin() + static_cast<std::ptrdiff_t>((k + 1) * reps));
    DeviationStats stats;
    stats.n = n_grid[k];
    stats.mean = compensated_mean(block);
    std::sort(block.begin(), block.end());
    stats.median = sorted_quantile(block, 0.5);
    stats.q90 = sorted_quantile(block, 0.9);
    out.rows.push_back(stats);
  }
  return out;
}

}  // namespace gclab
