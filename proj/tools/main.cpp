#include <CLI11.hpp>
#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Glivenko-Cantelli laboratory for dependent sequences"};
  gclab::cli::CliConfig config;
  std::uint64_t seed = 0;
  std::string out_dir;

  app.add_option("subcommand", config.subcommand, "simulate | conditions | entropy | inequalities | report")
      ->required();
  app.add_option("--config", config.config_path, "experiment config (INI)");
  auto* seed_opt = app.add_option("--seed", seed, "override run.seed");
  auto* out_opt = app.add_option("--out", out_dir, "override run.output_dir");
  app.add_option("--threads", config.threads, "worker threads (speed only; output is identical)")
      ->check(CLI::Range(1u, 1024u));
  app.add_flag("--quiet", config.quiet, "suppress progress output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (*seed_opt) config.seed = seed;
  if (*out_opt) config.out_dir = out_dir;
  return gclab::cli::dispatch(config, std::cout, std::cerr);
}
