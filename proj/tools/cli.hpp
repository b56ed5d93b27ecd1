#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace gclab::cli {

struct CliConfig {
  std::string subcommand;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  unsigned threads = 1;
  bool quiet = false;
};

std::string usage();

/// Runs one subcommand: simulate | conditions | entropy | inequalities | report.
/// Returns 0 on success; failures print a one-line cause to `err`.
int dispatch(const CliConfig& config, std::ostream& out, std::ostream& err);

}  // namespace gclab::cli
