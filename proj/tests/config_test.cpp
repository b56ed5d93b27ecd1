#include <gtest/gtest.h>

#include <filesystem>

#include "gclab/config.hpp"
#include "gclab/error.hpp"

using namespace gclab;

namespace {

std::string config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::config);
    return e.what();
  }
  ADD_FAILURE() << "config was accepted:\n" << text;
  return {};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST(ParseConfig, MinimalFillsDefaults) {
  const auto spec = parse_config("[model]\nkind = iid-uniform\n");
  ExperimentSpec expected;
  expected.n_grid = default_n_grid();
  EXPECT_EQ(spec, expected);
  EXPECT_EQ(spec.n_grid.front(), 64u);
  EXPECT_EQ(spec.n_grid.back(), 16384u);
  EXPECT_EQ(spec.n_grid.size(), 9u);
  EXPECT_EQ(spec.reps, 200u);
  EXPECT_EQ(spec.delta, 1.0);
}

TEST(ParseConfig, DeltaOutOfRange) {
  const auto msg = config_error("[model]\nkind = iid-uniform\n[conditions]\ndelta = 3.5\n");
  EXPECT_TRUE(contains(msg, "conditions.delta")) << msg;
  EXPECT_TRUE(contains(msg, "delta ∈ (0,3)")) << msg;
}

TEST(ParseConfig, NegativeRhoNamesAssociation) {
  const auto msg = config_error("[model]\nkind = gaussian-ar1\nrho = -0.2\n");
  EXPECT_TRUE(contains(msg, "model.rho")) << msg;
  EXPECT_TRUE(contains(msg, "association")) << msg;
}

TEST(ParseConfig, UnknownKeysAndSections) {
  EXPECT_TRUE(contains(config_error("[model]\nkind = iid-uniform\n[simulate]\nrepz = 3\n"), "simulate.repz"));
  EXPECT_TRUE(contains(config_error("[model]\nkind = iid-uniform\n[extra]\na = 1\n"), "unknown section"));
  EXPECT_TRUE(contains(config_error("[model]\nkind = iid-uniform\nrho = 0.3\n"), "model.rho"));
  EXPECT_TRUE(contains(config_error("seed = 1\n[model]\nkind = iid-uniform\n"), "top-level"));
  EXPECT_TRUE(contains(config_error("[model]\nkind = ar2\n"), "unknown model kind"));
  EXPECT_TRUE(contains(config_error("[simulate]\nreps = 3\n"), "model.kind"));
}

TEST(ParseConfig, MalformedValues) {
  EXPECT_TRUE(contains(config_error("[model]\nkind = iid-uniform\n[simulate]\nreps = many\n"), "simulate.reps"));
  EXPECT_TRUE(contains(config_error("[model]\nkind = iid-uniform\n[simulate]\nn_grid = 128, 64\n"), "strictly"));
  EXPECT_TRUE(contains(config_error("[model]\nkind = iid-uniform\n[entropy]\nepsilons = 0.5, 1.5\n"), "entropy.epsilons"));
  EXPECT_TRUE(contains(config_error("[model\nkind = iid-uniform\n"), "parse error"));
  EXPECT_TRUE(contains(config_error("[model]\nkind = markov-chain\ntransition = 0.5, 0.6; 0.5, 0.5\nvalues = 0, 1\n"),
                       "model.transition"));
}

TEST(ParseConfig, MarkovTransitionRows) {
  const auto spec = parse_config("[model]\nkind = markov-chain\ntransition = 0.9, 0.1; 0.2, 0.8\nvalues = 0, 1\n");
  ASSERT_EQ(spec.model.transition.size(), 2u);
  EXPECT_EQ(spec.model.transition[1], (std::vector<double>{0.2, 0.8}));
  EXPECT_EQ(spec.model.values, (std::vector<double>{0.0, 1.0}));
}

TEST(ParseConfig, BundledConfigsRoundTrip) {
  std::size_t count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(GCLAB_CONFIG_DIR)) {
    if (entry.path().extension() != ".ini") continue;
    ++count;
    const auto spec = load_config(entry.path().string());
    EXPECT_EQ(parse_config(serialize_config(spec)), spec) << entry.path();
    EXPECT_NO_THROW(build_model(spec.model)) << entry.path();
  }
  EXPECT_GE(count, 5u);
}

TEST(ParseConfig, RoundTripKeepsAwkwardDoubles) {
  ExperimentSpec spec;
  spec.n_grid = {10, 20, 30};
  spec.model.kind = "gaussian-ar1";
  spec.model.rho = 0.1 + 0.2;
  spec.x_grid = {-1.0 / 3.0, 1e-300, 2.5};
  spec.epsilons = {0.3};
  EXPECT_EQ(parse_config(serialize_config(spec)), spec);
}

TEST(SpecHash, StableAndSensitive) {
  auto a = parse_config("[model]\nkind = gaussian-ar1\nrho = 0.6\n");
  const auto h = spec_hash(a);
  EXPECT_EQ(h.size(), 16u);
  EXPECT_EQ(spec_hash(a), h);
  a.output_dir = "elsewhere";
  EXPECT_EQ(spec_hash(a), h);
  a.seed = 2;
  EXPECT_NE(spec_hash(a), h);
}

TEST(LoadConfig, MissingFile) {
  try {
    load_config("/nonexistent/config.ini");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::io);
  }
}

TEST(ResolveXGrid, DefaultQuantiles) {
  const auto spec = parse_config("[model]\nkind = iid-uniform\n");
  const auto grid = resolve_x_grid(spec, build_model(spec.model));
  ASSERT_EQ(grid.size(), 21u);
  EXPECT_NEAR(grid.front(), 0.025, 1e-15);
  EXPECT_NEAR(grid[10], 0.5, 1e-15);
  EXPECT_NEAR(grid.back(), 0.975, 1e-15);
}
