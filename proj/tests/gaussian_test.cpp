#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gclab/error.hpp"
#include "gclab/gaussian.hpp"
#include "gclab/rng.hpp"

using namespace gclab;

namespace {

double orthant(double rho) { return 0.25 + std::asin(rho) / (2.0 * std::numbers::pi); }

// Brute Monte Carlo of P(X <= x, Y <= y) for a standard bivariate normal.
double mc_cdf(double x, double y, double rho, int n, std::uint64_t seed) {
  CounterStream s(seed, 0);
  int hits = 0;
  const double c = std::sqrt(1.0 - rho * rho);
  for (int i = 0; i < n; ++i) {
    const double z1 = s.next_normal();
    const double z2 = rho * z1 + c * s.next_normal();
    hits += (z1 <= x && z2 <= y) ? 1 : 0;
  }
  return static_cast<double>(hits) / n;
}

}  // namespace

TEST(NormalCdf, ReferenceValues) {
  EXPECT_DOUBLE_EQ(normal_cdf(0.0), 0.5);
  EXPECT_NEAR(normal_cdf(1.959963984540054), 0.975, 1e-15);
  EXPECT_NEAR(normal_cdf(-1.0), 0.15865525393145707, 1e-15);
  EXPECT_EQ(normal_cdf(INFINITY), 1.0);
  EXPECT_EQ(normal_cdf(-INFINITY), 0.0);
}

TEST(NormalQuantile, InvertsCdf) {
  for (double p : {1e-10, 0.01, 0.3, 0.5, 0.77, 0.999}) EXPECT_NEAR(normal_cdf(normal_quantile(p)), p, 1e-14 + 1e-12 * p);
  EXPECT_TRUE(std::isinf(normal_quantile(0.0)));
  EXPECT_THROW(normal_quantile(1.5), Error);
}

TEST(BivariateNormal, OrthantFormula) {
  for (double rho : {-0.95, -0.5, -0.01, 0.001, 0.03, 0.05, 0.0500001, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999}) {
    EXPECT_NEAR(bivariate_normal_cdf(0.0, 0.0, rho), orthant(rho), 1e-12) << "rho=" << rho;
  }
}

TEST(BivariateNormal, IndependentFactorises) {
  EXPECT_EQ(bivariate_normal_excess(0.3, -1.2, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(bivariate_normal_cdf(0.3, -1.2, 0.0), normal_cdf(0.3) * normal_cdf(-1.2));
}

TEST(BivariateNormal, MatchesMonteCarlo) {
  const int n = 400000;
  for (double rho : {0.02, 0.3, 0.8}) {
    for (auto [x, y] : {std::pair{-0.5, 1.0}, std::pair{1.3, 0.2}}) {
      const double p = bivariate_normal_cdf(x, y, rho);
      const double se = std::sqrt(p * (1.0 - p) / n);
      EXPECT_NEAR(mc_cdf(x, y, rho, n, 17), p, 5.0 * se) << rho << " " << x << " " << y;
    }
  }
}

TEST(BivariateNormal, SeriesAndQuadratureAgreeAtSwitch) {
  // d/drho of the excess is the bivariate density, so a step h across the switch
  // must move the value by h times that density.
  const double rho = 0.05, h = 1e-9, y = 0.3;
  for (double x : {-2.0, -0.4, 0.0, 0.7, 2.5}) {
    const double q = (x * x - 2.0 * rho * x * y + y * y) / (1.0 - rho * rho);
    const double density = std::exp(-0.5 * q) / (2.0 * std::numbers::pi * std::sqrt(1.0 - rho * rho));
    const double step = bivariate_normal_excess(x, y, rho + h) - bivariate_normal_excess(x, y, rho);
    EXPECT_NEAR(step, h * density, 1e-16) << x;
  }
}

TEST(BivariateNormal, TinyCorrelationIsLinear) {
  // d/drho of the excess at 0 is phi(x) phi(y).
  const double x = 0.4, y = -1.1;
  const double slope = std::exp(-0.5 * (x * x + y * y)) / (2.0 * std::numbers::pi);
  EXPECT_NEAR(bivariate_normal_excess(x, y, 1e-200) / 1e-200, slope, 1e-14);
}

TEST(BivariateNormal, RejectsBadRho) {
  EXPECT_THROW(bivariate_normal_excess(0, 0, 1.0), Error);
  EXPECT_THROW(bivariate_normal_excess(0, 0, NAN), Error);
}
