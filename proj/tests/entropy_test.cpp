#include <gtest/gtest.h>

#include <cmath>

#include "gclab/empirical.hpp"
#include "gclab/entropy.hpp"
#include "gclab/error.hpp"

using namespace gclab;

namespace {

// Shattering by direct enumeration of every subset against a dense sweep of parameters.
bool brute_halfline_shatters(const std::vector<double>& points) {
  const std::size_t k = points.size();
  std::vector<bool> seen(1u << k, false);
  for (int i = -2000; i <= 2000; ++i) {
    const double theta = i / 100.0;
    unsigned mask = 0;
    for (std::size_t j = 0; j < k; ++j)
      if (points[j] <= theta) mask |= 1u << j;
    seen[mask] = true;
  }
  for (bool s : seen)
    if (!s) return false;
  return true;
}

}  // namespace

TEST(Shatters, HalfLines) {
  const auto h = SetFamily::half_lines();
  EXPECT_TRUE(shatters(std::vector<double>{0.3}, h));
  EXPECT_FALSE(shatters(std::vector<double>{0.1, 0.9}, h));
  EXPECT_FALSE(shatters(std::vector<double>{0.1, 0.5, 0.9}, h));
  for (const auto& pts : {std::vector<double>{-3.0}, std::vector<double>{1.0, 2.0}, std::vector<double>{-1, 0, 1}})
    EXPECT_EQ(shatters(pts, h), brute_halfline_shatters(pts));
}

TEST(Shatters, Intervals) {
  const auto iv = SetFamily::closed_intervals();
  EXPECT_TRUE(shatters(std::vector<double>{1.0, 2.0}, iv));
  EXPECT_FALSE(shatters(std::vector<double>{1.0, 2.0, 3.0}, iv));
}

TEST(Shatters, PowerSetShattersItsUniverse) {
  const auto ps = SetFamily::power_set({0.0, 1.0, 2.0});
  EXPECT_TRUE(shatters(std::vector<double>{0.0, 1.0, 2.0}, ps));
}

TEST(Shatters, CapacityLimit) {
  std::vector<double> many(21);
  for (std::size_t i = 0; i < many.size(); ++i) many[i] = static_cast<double>(i);
  try {
    shatters(many, SetFamily::half_lines());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::capacity);
  }
}

TEST(VcIndex, KnownFamilies) {
  const auto h = vc_index(SetFamily::half_lines());
  ASSERT_TRUE(h.index.has_value());
  EXPECT_EQ(*h.index, 2u);
  EXPECT_EQ(h.largest_shattered, 1u);
  const auto iv = vc_index(SetFamily::closed_intervals());
  ASSERT_TRUE(iv.index.has_value());
  EXPECT_EQ(*iv.index, 3u);
  const auto ps = vc_index(SetFamily::power_set({0.0, 1.0, 2.0, 3.0}));
  EXPECT_EQ(ps.largest_shattered, 4u);
  EXPECT_TRUE(ps.indeterminate);
  EXPECT_FALSE(ps.index.has_value());
}

TEST(VcEntropyBound, HandValue) {
  // K * I * (4e)^I * (1/eps)^{r(I-1)}
  const double expected = 2.0 * std::pow(4.0 * std::exp(1.0), 2.0) * std::pow(10.0, 2.0);
  EXPECT_NEAR(vc_entropy_bound(2, 0.1, 1.0, 2.0), expected, 1e-9 * expected);
  EXPECT_NEAR(vc_entropy_bound(2, 0.1, 1.0, 2.0), 23645.0, 1.0);
  EXPECT_THROW(vc_entropy_bound(2, 0.0), Error);
}

TEST(BracketNet, HalfLineCounts) {
  for (auto [eps, count] : {std::pair{0.5, 2u}, std::pair{0.1, 10u}, std::pair{0.01, 100u}, std::pair{0.3, 4u}}) {
    const auto net = bracket_net_halflines(Marginal::uniform(), eps);
    EXPECT_EQ(net.brackets.size(), count) << eps;
    std::vector<double> probes;
    for (int i = -10; i <= 110; ++i) probes.push_back(i / 100.0);
    EXPECT_NO_THROW(net.validate(probes));
    for (const auto& b : net.brackets) EXPECT_LE(b.upper_mean - b.lower_mean, eps + 1e-12);
  }
}

TEST(BracketNet, EveryHalfLineIsBracketed) {
  const auto F = Marginal::normal();
  const auto net = bracket_net_halflines(F, 0.1);
  for (int i = -40; i <= 40; ++i) {
    const double theta = i / 10.0;
    const auto f = Observable::indicator_le(theta);
    bool covered = false;
    for (const auto& b : net.brackets) {
      bool inside = true;
      for (int k = -60; k <= 60 && inside; ++k) {
        const double t = k / 10.0 + 0.05;
        inside = b.lower(t) <= f(t) && f(t) <= b.upper(t);
      }
      covered = covered || inside;
    }
    EXPECT_TRUE(covered) << theta;
  }
}

TEST(EntropyReport, HalfLines) {
  const auto r = halfline_entropy_report(Marginal::uniform(), 0.1);
  EXPECT_EQ(r.bracket_count, 10u);
  EXPECT_EQ(r.vc_index, 2u);
  ASSERT_TRUE(r.vc_bound.has_value());
  EXPECT_NEAR(*r.vc_bound, vc_entropy_bound(2, 0.1), 1e-9);
}
