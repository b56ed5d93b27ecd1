#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gclab/empirical.hpp"
#include "gclab/entropy.hpp"
#include "gclab/error.hpp"
#include "gclab/generators.hpp"
#include "gclab/rng.hpp"

using namespace gclab;

namespace {

// sup_x |F_n(x) - F(x)| by scanning both one-sided limits at every sample point
// and at a dense grid, with F_n counted directly.
double brute_ks(const std::vector<double>& path, const Marginal& F, double lo, double hi) {
  const double n = static_cast<double>(path.size());
  auto fn = [&](double x, bool left) {
    double c = 0.0;
    for (double v : path) c += left ? (v < x) : (v <= x);
    return c / n;
  };
  double worst = 0.0;
  for (double v : path) {
    worst = std::max(worst, std::abs(fn(v, false) - F.cdf(v)));
    worst = std::max(worst, std::abs(fn(v, true) - F.cdf_left(v)));
  }
  for (int i = 0; i <= 2000; ++i) {
    const double x = lo + (hi - lo) * i / 2000.0;
    worst = std::max(worst, std::abs(fn(x, false) - F.cdf(x)));
  }
  return worst;
}

std::vector<double> uniform_path(std::size_t n, std::uint64_t seed) {
  CounterStream s(seed, 0);
  std::vector<double> out(n);
  for (auto& v : out) v = s.next_uniform();
  return out;
}

}  // namespace

TEST(EmpiricalMeasure, Basics) {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  EXPECT_DOUBLE_EQ(empirical_measure(x, Observable::identity()), 2.5);
  EXPECT_DOUBLE_EQ(empirical_measure(x, Observable::indicator_le(2.0)), 0.5);
  EXPECT_DOUBLE_EQ(empirical_measure(x, Observable::constant(7.0)), 7.0);
  EXPECT_DOUBLE_EQ(empirical_set_measure(x, [](double v) { return v > 3.5; }), 0.25);
  EXPECT_DOUBLE_EQ(empirical_cdf(x, 3.0), 0.75);
  const auto h = Observable::linear_combination(2.0, Observable::identity(), -1.0, Observable::constant(1.0));
  EXPECT_DOUBLE_EQ(empirical_measure(x, h), 4.0);
  EXPECT_THROW(empirical_measure(std::vector<double>{}, Observable::identity()), Error);
}

TEST(KsSupDeviation, UniformOrderStatisticFormula) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto x = uniform_path(50 + seed, seed);
    std::vector<double> s = x;
    std::sort(s.begin(), s.end());
    const double n = static_cast<double>(s.size());
    double d = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
      d = std::max({d, (i + 1) / n - s[i], s[i] - i / n});
    EXPECT_NEAR(ks_sup_deviation(x, Marginal::uniform()), d, 1e-15);
  }
}

TEST(KsSupDeviation, MatchesBruteScanForDiscreteAndNormal) {
  const auto d = Marginal::discrete({0.0, 1.0, 2.5}, {0.2, 0.5, 0.3});
  const std::vector<double> path{1.0, 1.0, 2.5, 1.0, 0.0, 1.0};
  EXPECT_NEAR(ks_sup_deviation(path, d), brute_ks(path, d, -1.0, 3.0), 1e-15);
  // An atom the path never visits still counts.
  const std::vector<double> miss{1.0, 1.0, 1.0};
  EXPECT_NEAR(ks_sup_deviation(miss, d), brute_ks(miss, d, -1.0, 3.0), 1e-15);
  EXPECT_NEAR(ks_sup_deviation(miss, d), 0.3, 1e-15);

  CounterStream s(3, 0);
  std::vector<double> normal(80);
  for (auto& v : normal) v = s.next_normal();
  EXPECT_NEAR(ks_sup_deviation(normal, Marginal::normal()), brute_ks(normal, Marginal::normal(), -5, 5), 1e-12);
}

TEST(KsSupDeviation, PointMassPath) {
  const std::vector<double> path{2.0, 2.0};
  EXPECT_EQ(ks_sup_deviation(path, Marginal::point(2.0)), 0.0);
  EXPECT_EQ(ks_sup_deviation(path, Marginal::point(3.0)), 1.0);
}

TEST(ProbabilityIntegralTransform, MapsToUniformScale) {
  Path p;
  p.values = {-1.0, 0.0, 2.0};
  const auto u = probability_integral_transform(p, Marginal::normal());
  EXPECT_DOUBLE_EQ(u.values[1], 0.5);
  EXPECT_NEAR(ks_sup_deviation(u.values, Marginal::uniform()), ks_sup_deviation(p.values, Marginal::normal()), 1e-15);
}

TEST(BracketSupBound, HandInstance) {
  const std::vector<double> path{0.25, 0.75};
  const auto net = bracket_net_halflines(Marginal::uniform(), 0.5);
  EXPECT_DOUBLE_EQ(bracket_sup_bound(path, net), 0.5);
  EXPECT_DOUBLE_EQ(ks_sup_deviation(path, Marginal::uniform()), 0.25);
}

TEST(BracketSupBound, DominatesKsWithinLevel) {
  for (double eps : {0.5, 0.1, 0.01}) {
    const auto net = bracket_net_halflines(Marginal::uniform(), eps);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const auto x = uniform_path(37 + 3 * seed, seed);
      const double ks = ks_sup_deviation(x, Marginal::uniform());
      const double bound = bracket_sup_bound(x, net);
      EXPECT_GE(bound, ks - 1e-15);
      EXPECT_LE(bound - ks, eps + 1e-15);
    }
  }
}

TEST(SortedQuantile, Type7) {
  const std::vector<double> s{1.0, 2.0, 3.0, 4.0, 5.0};
  EXPECT_DOUBLE_EQ(sorted_quantile(s, 0.5), 3.0);
  EXPECT_DOUBLE_EQ(sorted_quantile(s, 0.9), 4.6);
  EXPECT_DOUBLE_EQ(sorted_quantile(s, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(sorted_quantile(s, 1.0), 5.0);
}

TEST(RunGcDiagnostic, ThreadCountDoesNotChangeOutput) {
  const auto model = make_gaussian_ar1(0.4);
  const std::vector<std::size_t> grid{64, 128, 256, 512};
  std::ostringstream one, many;
  run_gc_diagnostic(model, grid, 40, 99, {1}).write_csv(one);
  run_gc_diagnostic(model, grid, 40, 99, {8}).write_csv(many);
  EXPECT_EQ(one.str(), many.str());
  EXPECT_EQ(one.str().substr(0, one.str().find('\n')), "n,mean,median,q90,reps,seed");
}

TEST(RunGcDiagnostic, IidDeviationShrinksLikeRootN) {
  const auto model = make_iid(Marginal::uniform());
  const auto path = run_gc_diagnostic(model, {256, 4096}, 200, 7);
  ASSERT_EQ(path.rows.size(), 2u);
  EXPECT_LT(path.rows[1].mean, path.rows[0].mean);
  // Kolmogorov mean is about 0.8687 / sqrt(n).
  EXPECT_NEAR(path.rows[1].mean * 64.0, 0.8687, 0.1);
  for (const auto& r : path.rows) {
    EXPECT_LE(r.median, r.q90);
  }
}

TEST(RunGcDiagnostic, RejectsBadGrid) {
  const auto model = make_iid(Marginal::uniform());
  EXPECT_THROW(run_gc_diagnostic(model, {128, 64}, 10, 1), Error);
  EXPECT_THROW(run_gc_diagnostic(model, {}, 10, 1), Error);
  EXPECT_THROW(run_gc_diagnostic(model, {64}, 0, 1), Error);
}
