#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "gclab/error.hpp"
#include "gclab/gaussian.hpp"
#include "gclab/generators.hpp"
#include "gclab/markov.hpp"

using namespace gclab;

namespace {

double sample_covariance(const std::vector<double>& x, std::size_t lag) {
  const std::size_t n = x.size() - lag;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += x[i + lag];
  }
  mx /= n;
  my /= n;
  double c = 0.0;
  for (std::size_t i = 0; i < n; ++i) c += (x[i] - mx) * (x[i + lag] - my);
  return c / n;
}

}  // namespace

TEST(GaussianAr1, RejectsNegativeRho) {
  try {
    make_gaussian_ar1(-0.2);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_parameter);
    EXPECT_NE(std::string(e.what()).find("association"), std::string::npos);
  }
  EXPECT_THROW(make_gaussian_ar1(1.0), Error);
}

TEST(GaussianAr1, StationaryMomentsAndLags) {
  const auto model = make_gaussian_ar1(0.6);
  const auto path = sample(model, 400000, 5);
  double mean = 0.0;
  for (double v : path.values) mean += v;
  mean /= static_cast<double>(path.size());
  EXPECT_NEAR(mean, 0.0, 0.02);
  for (std::size_t j : {0u, 1u, 2u, 5u}) {
    EXPECT_NEAR(sample_covariance(path.values, j), std::pow(0.6, j), 0.02) << j;
    EXPECT_DOUBLE_EQ(model.analytic_gamma(j), std::pow(0.6, j));
  }
  // The first draw is already stationary: check the spread of X_1 over many seeds.
  double sq = 0.0;
  for (std::uint64_t s = 0; s < 4000; ++s) sq += std::pow(sample(model, 1, s).values[0], 2);
  EXPECT_NEAR(sq / 4000.0, 1.0, 0.08);
}

TEST(MovingAverage, CovarianceMatchesConvolution) {
  const std::vector<double> a{1.0, 0.5, 0.25};
  const auto model = make_moving_average(a, 2.0);
  for (std::size_t j = 0; j < 5; ++j) {
    double brute = 0.0;
    for (std::size_t k = 0; k + j < a.size(); ++k) brute += a[k] * a[k + j];
    EXPECT_DOUBLE_EQ(model.analytic_gamma(j), 4.0 * brute);
  }
  const auto path = sample(model, 300000, 8);
  EXPECT_NEAR(sample_covariance(path.values, 1), model.analytic_gamma(1), 0.05);
  EXPECT_NEAR(sample_covariance(path.values, 3), 0.0, 0.05);
  EXPECT_THROW(make_moving_average({1.0, -0.5}), Error);
}

TEST(MarkovChain, SampledFrequenciesMatchStationary) {
  const auto spec = MarkovChainSpec::create({{0.9, 0.1}, {0.2, 0.8}}, {0.0, 1.0});
  const auto model = make_markov_chain(spec);
  const auto path = sample(model, 300000, 3);
  double ones = 0.0;
  for (double v : path.values) ones += v;
  EXPECT_NEAR(ones / path.size(), 1.0 / 3.0, 0.01);
  EXPECT_NEAR(sample_covariance(path.values, 1), 2.0 / 9.0 * 0.7, 0.01);
  EXPECT_FALSE(model.associated());
}

TEST(PerfectModel, ConstantPath) {
  const auto model = make_perfectly_dependent(Marginal::uniform());
  const auto path = sample(model, 100, 4);
  for (double v : path.values) EXPECT_EQ(v, path.values[0]);
  EXPECT_DOUBLE_EQ(model.analytic_gamma(500), 1.0 / 12.0);
}

TEST(Sample, DeterministicPerSeedAndStream) {
  const auto model = make_gaussian_ar1(0.3);
  EXPECT_EQ(sample(model, 500, 11, 2).values, sample(model, 500, 11, 2).values);
  EXPECT_NE(sample(model, 500, 11, 2).values, sample(model, 500, 11, 3).values);
  EXPECT_THROW(sample(model, 0, 1), Error);
}

TEST(EstimateLagCovariance, AgreesWithAnalytic) {
  const auto model = make_gaussian_ar1(0.5);
  const auto est = estimate_lag_covariance(model, 2, 500000, 21);
  EXPECT_TRUE(est.estimated);
  EXPECT_GT(est.std_error, 0.0);
  EXPECT_NEAR(est.value, 0.25, 4.0 * est.std_error + 1e-3);
  const auto exact = lag_covariance(model, 2);
  EXPECT_FALSE(exact.estimated);
  EXPECT_DOUBLE_EQ(exact.value, 0.25);
}

TEST(IndicatorCovariance, GaussianMatchesBivariateNormal) {
  const auto model = make_gaussian_ar1(0.6);
  EXPECT_NEAR(indicator_lag_covariance(model, 0.0, 0), 0.25, 1e-15);
  EXPECT_NEAR(indicator_lag_covariance(model, 0.0, 1), std::asin(0.6) / (2.0 * std::numbers::pi), 1e-12);
  EXPECT_NEAR(indicator_lag_covariance(model, 0.0, 3), std::asin(0.216) / (2.0 * std::numbers::pi), 1e-12);
}

TEST(IndicatorCovariance, ChainMatchesJointLaw) {
  const auto spec = MarkovChainSpec::create({{0.6, 0.3, 0.1}, {0.2, 0.5, 0.3}, {0.1, 0.3, 0.6}}, {-1.0, 0.0, 2.0});
  const auto model = make_markov_chain(spec);
  for (std::size_t lag : {1u, 2u, 4u}) {
    const auto joint = chain_joint_law(spec, lag);
    for (double x : {-1.0, 0.5}) {
      double both = 0.0, marg = 0.0;
      for (std::size_t a = 0; a < 3; ++a) {
        if (spec.values[a] > x) continue;
        marg += spec.stationary[a];
        for (std::size_t b = 0; b < 3; ++b)
          if (spec.values[b] <= x) both += joint[a][b];
      }
      EXPECT_NEAR(indicator_lag_covariance(model, x, lag), both - marg * marg, 1e-14);
    }
  }
}

TEST(UniformTransformGamma, ArcsineFormulaAgainstMonteCarlo) {
  const auto model = make_gaussian_ar1(0.8);
  const auto gamma = uniform_transform_gamma(model).values(3);
  EXPECT_NEAR(gamma[0], 1.0 / 12.0, 1e-15);
  const auto path = sample(model, 400000, 13);
  std::vector<double> u;
  for (double v : path.values) u.push_back(normal_cdf(v));
  EXPECT_NEAR(sample_covariance(u, 1), gamma[1], 2e-3);
  EXPECT_NEAR(sample_covariance(u, 2), gamma[2], 2e-3);
}

TEST(WritePathCsv, HeaderAndRoundTrip) {
  Path p;
  p.values = {0.1, -2.5, 1.0 / 3.0};
  std::ostringstream os;
  write_path_csv(os, p);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "value");
  for (double v : p.values) {
    std::getline(is, line);
    EXPECT_EQ(std::stod(line), v);
  }
}
