#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;
using gclab::cli::CliConfig;
using gclab::cli::dispatch;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("gclab_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string config(const std::string& name) { return std::string(GCLAB_CONFIG_DIR) + "/" + name; }

int run(const std::string& sub, const std::string& cfg, const fs::path& out, unsigned threads = 1,
        std::optional<std::uint64_t> seed = std::nullopt) {
  CliConfig c;
  c.subcommand = sub;
  c.config_path = cfg;
  c.out_dir = out.string();
  c.threads = threads;
  c.seed = seed;
  c.quiet = true;
  std::ostringstream o, e;
  const int rc = dispatch(c, o, e);
  if (rc != 0) ADD_FAILURE() << e.str();
  return rc;
}

// A small config so the CLI round trips stay quick.
std::string small_config(const fs::path& dir) {
  fs::create_directories(dir);
  const fs::path path = dir / "small.ini";
  std::ofstream(path) << "[model]\nkind = gaussian-ar1\nrho = 0.5\n[simulate]\nn_grid = 64, 128, 256, 512\nreps = 30\n"
                         "[run]\nseed = 5\n";
  return path.string();
}

}  // namespace

TEST(Cli, UnknownSubcommand) {
  CliConfig c;
  c.subcommand = "frobnicate";
  std::ostringstream o, e;
  EXPECT_NE(dispatch(c, o, e), 0);
  EXPECT_NE(e.str().find("usage:"), std::string::npos);
}

TEST(Cli, MissingConfigIsOneLineError) {
  CliConfig c;
  c.subcommand = "simulate";
  c.config_path = "/nonexistent.ini";
  std::ostringstream o, e;
  EXPECT_NE(dispatch(c, o, e), 0);
  const auto text = e.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1);
}

TEST(Cli, SimulateCsvFormat) {
  const auto dir = scratch("simulate");
  ASSERT_EQ(run("simulate", small_config(dir), dir), 0);
  std::istringstream csv(slurp(dir / "deviation.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "n,mean,median,q90,reps,seed");
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 5);
    EXPECT_TRUE(line.ends_with(",30,5"));
  }
  EXPECT_EQ(rows, 4);
}

TEST(Cli, SimulateThreadsAndSeedOverride) {
  const auto dir = scratch("threads");
  const auto cfg = small_config(dir);
  ASSERT_EQ(run("simulate", cfg, dir / "a", 1), 0);
  ASSERT_EQ(run("simulate", cfg, dir / "b", 8), 0);
  EXPECT_EQ(slurp(dir / "a" / "deviation.csv"), slurp(dir / "b" / "deviation.csv"));
  ASSERT_EQ(run("simulate", cfg, dir / "c", 1, 77), 0);
  EXPECT_NE(slurp(dir / "a" / "deviation.csv"), slurp(dir / "c" / "deviation.csv"));
  EXPECT_NE(slurp(dir / "c" / "deviation.csv").find(",77\n"), std::string::npos);
}

TEST(Cli, ConditionsJsonContent) {
  const auto dir = scratch("conditions");
  ASSERT_EQ(run("conditions", config("gaussian_ar1.ini"), dir), 0);
  const auto j = nlohmann::json::parse(slurp(dir / "conditions.json"));
  for (const char* key : {"C1", "C2", "gcep", "cesaro_cov13", "cesaro_cov", "spec_hash", "seed"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["C1"]["verdict"], "bounded");
  EXPECT_EQ(j["gcep"]["worst_C1"]["verdict"], "bounded");
  EXPECT_EQ(j["cesaro_cov13"]["verdict"], "to-zero");
  EXPECT_EQ(j["seed"], 20240602);
  std::istringstream csv(slurp(dir / "condition_statistics.csv"));
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "condition_id,delta,q,statistic");
}

TEST(Cli, EntropyAndInequalitiesCarryHashAndSeed) {
  const auto dir = scratch("entropy");
  const auto cfg = config("markov_two_state.ini");
  ASSERT_EQ(run("entropy", cfg, dir), 0);
  ASSERT_EQ(run("inequalities", cfg, dir), 0);
  const auto e = nlohmann::json::parse(slurp(dir / "entropy.json"));
  const auto q = nlohmann::json::parse(slurp(dir / "inequalities.json"));
  EXPECT_EQ(e["spec_hash"], q["spec_hash"]);
  EXPECT_EQ(e["seed"], q["seed"]);
  EXPECT_EQ(e["reports"][1]["bracket_count"], 10);
  EXPECT_EQ(q["summary"]["phi-covariance/exact"]["holds"], q["summary"]["phi-covariance/exact"]["total"]);
}

TEST(Cli, ReportMergesArtifacts) {
  const auto dir = scratch("report");
  const auto cfg = config("markov_two_state.ini");
  {
    CliConfig c;
    c.subcommand = "report";
    c.out_dir = dir.string();
    std::ostringstream o, e;
    EXPECT_NE(dispatch(c, o, e), 0);  // nothing to merge yet
  }
  ASSERT_EQ(run("conditions", cfg, dir), 0);
  ASSERT_EQ(run("simulate", small_config(dir / "cfg"), dir), 0);
  ASSERT_EQ(run("report", cfg, dir), 0);
  const auto s = nlohmann::json::parse(slurp(dir / "summary.json"));
  EXPECT_TRUE(s.contains("deviation"));
  EXPECT_TRUE(s.contains("conditions"));
  EXPECT_EQ(slurp(dir / "plot_deviation.csv").substr(0, 17), "n,mean,median,q90");
  EXPECT_EQ(slurp(dir / "plot_statistic.csv").substr(0, 25), "condition_id,q,statistic\n");
}
