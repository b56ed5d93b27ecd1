#include <gtest/gtest.h>

#include <cmath>

#include "gclab/error.hpp"
#include "gclab/marginal.hpp"

using namespace gclab;

TEST(Marginal, UniformBasics) {
  const auto u = Marginal::uniform(2.0, 6.0);
  EXPECT_DOUBLE_EQ(u.cdf(3.0), 0.25);
  EXPECT_EQ(u.cdf(1.0), 0.0);
  EXPECT_EQ(u.cdf(7.0), 1.0);
  EXPECT_DOUBLE_EQ(u.quantile(0.5), 4.0);
  EXPECT_DOUBLE_EQ(u.mean(), 4.0);
  EXPECT_DOUBLE_EQ(u.variance(), 16.0 / 12.0);
  EXPECT_DOUBLE_EQ(*u.density_bound(), 0.25);
  EXPECT_TRUE(u.continuous());
  EXPECT_THROW(Marginal::uniform(1.0, 1.0), Error);
}

TEST(Marginal, NormalBasics) {
  const auto n = Marginal::normal(1.0, 2.0);
  EXPECT_DOUBLE_EQ(n.cdf(1.0), 0.5);
  EXPECT_NEAR(n.quantile(n.cdf(2.3)), 2.3, 1e-12);
  EXPECT_NEAR(*n.density_bound(), 1.0 / (2.0 * std::sqrt(2.0 * M_PI)), 1e-15);
  EXPECT_THROW(Marginal::normal(0.0, -1.0), Error);
}

TEST(Marginal, PointMass) {
  const auto p = Marginal::point(3.0);
  EXPECT_EQ(p.cdf(2.999), 0.0);
  EXPECT_EQ(p.cdf(3.0), 1.0);
  EXPECT_EQ(p.cdf_left(3.0), 0.0);
  EXPECT_EQ(p.variance(), 0.0);
  EXPECT_FALSE(p.density_bound().has_value());
}

TEST(Marginal, DiscreteMergesAndSorts) {
  const auto d = Marginal::discrete({1.0, 0.0, 1.0}, {0.25, 0.5, 0.25});
  ASSERT_EQ(d.atoms().size(), 2u);
  EXPECT_EQ(d.atoms()[0], 0.0);
  EXPECT_DOUBLE_EQ(d.atom_probs()[1], 0.5);
  EXPECT_DOUBLE_EQ(d.cdf(0.0), 0.5);
  EXPECT_DOUBLE_EQ(d.cdf_left(1.0), 0.5);
  EXPECT_DOUBLE_EQ(d.quantile(0.5), 0.0);
  EXPECT_DOUBLE_EQ(d.quantile(0.51), 1.0);
  EXPECT_DOUBLE_EQ(d.mean(), 0.5);
  EXPECT_DOUBLE_EQ(d.variance(), 0.25);
  EXPECT_THROW(Marginal::discrete({0.0, 1.0}, {0.5, 0.6}), Error);
}

TEST(Marginal, CdfValidity) {
  for (const auto& m : {Marginal::uniform(), Marginal::normal(), Marginal::point(1.0),
                        Marginal::discrete({-1.0, 2.0}, {0.3, 0.7})}) {
    EXPECT_TRUE(cdf_looks_valid(m)) << m.label();
  }
}
