#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "gclab/config.hpp"
#include "gclab/entropy.hpp"
#include "gclab/error.hpp"
#include "gclab/inequalities.hpp"
#include "gclab/montecarlo.hpp"
#include "gclab/serialize.hpp"

namespace gclab::cli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

ExperimentSpec effective_spec(const CliConfig& config) {
  if (config.config_path.empty()) fail(ErrorKind::config, "--config is required for " + config.subcommand);
  ExperimentSpec spec = load_config(config.config_path);
  if (config.seed) spec.seed = *config.seed;
  if (config.out_dir) spec.output_dir = *config.out_dir;
  return spec;
}

fs::path prepare_output(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorKind::io, "cannot create output directory " + dir + ": " + ec.message());
  return fs::path(dir);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::io, "cannot write " + path.string());
  out << text;
  if (!out) fail(ErrorKind::io, "write failed for " + path.string());
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::optional<json> read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::io, "malformed JSON in " + path.string() + ": " + e.what());
  }
}

int run_simulate(const CliConfig& config, std::ostream& out) {
  const ExperimentSpec spec = effective_spec(config);
  const fs::path dir = prepare_output(spec.output_dir);
  const fs::path csv = dir / "deviation.csv";
  const DeviationPath path = run_convergence_study(spec, {config.threads, csv.string()});
  if (!config.quiet) {
    out << "model " << path.model_id << ", reps " << path.reps << ", seed " << path.seed << '\n';
    for (const auto& row : path.rows) out << "  n=" << row.n << "  mean sup|F_n-F|=" << row.mean << '\n';
    if (path.rows.size() >= 3) out << "decay slope " << fit_decay_slope(path).slope << '\n';
    out << "wrote " << csv.string() << '\n';
  }
  return 0;
}

int run_conditions(const CliConfig& config, std::ostream& out) {
  const ExperimentSpec spec = effective_spec(config);
  const fs::path dir = prepare_output(spec.output_dir);
  const ConditionSuite suite = run_condition_suite(spec);
  write_json(dir / "conditions.json", json(suite));

  std::ostringstream csv;
  write_condition_csv(csv, suite.c1, true);
  write_condition_csv(csv, suite.c2, false);
  write_condition_csv(csv, suite.gcep.worst_c1, false);
  write_condition_csv(csv, suite.gcep.worst_c2, false);
  write_text(dir / "condition_statistics.csv", csv.str());

  if (!config.quiet) {
    out << "model " << suite.model_id << '\n';
    out << "  C1 " << to_string(suite.c1.verdict) << " (sup " << suite.c1.running_sup << ")\n";
    out << "  C2 " << to_string(suite.c2.verdict) << " (sup " << suite.c2.running_sup << ")\n";
    out << "  gcep C1 " << to_string(suite.gcep.worst_c1.verdict) << ", gcep C2 "
        << to_string(suite.gcep.worst_c2.verdict) << '\n';
    if (suite.cesaro_cov13) out << "  cesaro cov^(1/3) " << (suite.cesaro_cov13->to_zero ? "to-zero" : "fails") << '\n';
    if (suite.cesaro_cov) out << "  cesaro cov " << (suite.cesaro_cov->to_zero ? "to-zero" : "fails") << '\n';
    if (!suite.phi_checks.empty()) {
      bool all = true;
      for (const auto& c : suite.phi_checks) all = all && c.pass;
      out << "  phi decay " << (all ? "pass" : "fail") << '\n';
    }
    out << "wrote " << (dir / "conditions.json").string() << '\n';
  }
  return 0;
}

int run_entropy(const CliConfig& config, std::ostream& out) {
  const ExperimentSpec spec = effective_spec(config);
  const fs::path dir = prepare_output(spec.output_dir);
  const StationaryModel model = build_model(spec.model);
  const Marginal marginal = model.marginal().continuous() ? model.marginal() : Marginal::uniform();

  json reports = json::array();
  for (double eps : spec.epsilons) reports.push_back(halfline_entropy_report(marginal, eps, spec.K, spec.r));

  json families = json::array();
  for (const auto& family : {SetFamily::half_lines(), SetFamily::closed_intervals(),
                             SetFamily::power_set({0.0, 1.0, 2.0, 3.0, 4.0})}) {
    const auto vc = vc_index(family, spec.probe_budget, spec.seed);
    families.push_back({{"family", family.label},
                        {"vc_index", vc.index ? json(*vc.index) : json(nullptr)},
                        {"largest_shattered", vc.largest_shattered},
                        {"indeterminate", vc.indeterminate},
                        {"probes", vc.probes}});
  }
  write_json(dir / "entropy.json", {{"spec_hash", spec_hash(spec)},
                                    {"seed", spec.seed},
                                    {"marginal", marginal.label()},
                                    {"reports", reports},
                                    {"vc", families}});
  if (!config.quiet) {
    for (const auto& r : reports) {
      out << "half-lines eps=" << r["epsilon"] << ": " << r["bracket_count"] << " brackets, bound "
          << r["bound_value"] << '\n';
    }
    out << "wrote " << (dir / "entropy.json").string() << '\n';
  }
  return 0;
}

int run_inequalities(const CliConfig& config, std::ostream& out) {
  const ExperimentSpec spec = effective_spec(config);
  const fs::path dir = prepare_output(spec.output_dir);
  std::vector<InequalityVerdict> verdicts =
      run_inequality_battery({spec.seed, spec.newman_trials, spec.newman_samples});
  const StationaryModel model = build_model(spec.model);
  if (model.kind() == ModelKind::markov_chain) {
    for (std::size_t lag = 1; lag <= 10; ++lag) {
      verdicts.push_back(check_phi_covariance(model.chain(), lag, Observable::identity(), Observable::identity(), 2.0));
    }
  }
  std::map<std::string, std::pair<int, int>> tally;  // id/mode -> (holds, total)
  for (const auto& v : verdicts) {
    auto& t = tally[v.inequality_id + "/" + v.mode];
    t.first += v.holds ? 1 : 0;
    t.second += 1;
  }
  json summary = json::object();
  for (const auto& [key, t] : tally) summary[key] = {{"holds", t.first}, {"total", t.second}};
  write_json(dir / "inequalities.json",
             {{"spec_hash", spec_hash(spec)}, {"seed", spec.seed}, {"summary", summary}, {"verdicts", verdicts}});
  if (!config.quiet) {
    for (const auto& [key, t] : tally) out << "  " << key << ": " << t.first << "/" << t.second << " hold\n";
    out << "wrote " << (dir / "inequalities.json").string() << '\n';
  }
  return 0;
}

int run_report(const CliConfig& config, std::ostream& out) {
  std::string dir_name = config.out_dir.value_or("out");
  if (!config.out_dir && !config.config_path.empty()) dir_name = effective_spec(config).output_dir;
  const fs::path dir(dir_name);
  json summary = json::object();
  int found = 0;

  if (std::ifstream dev(dir / "deviation.csv"); dev) {
    ++found;
    std::string line;
    std::getline(dev, line);
    std::ostringstream plot;
    plot << "n,mean,median,q90\n";
    DeviationPath path;
    json rows = json::array();
    while (std::getline(dev, line)) {
      if (line.empty()) continue;
      std::vector<std::string> cells;
      std::istringstream is(line);
      for (std::string cell; std::getline(is, cell, ',');) cells.push_back(cell);
      if (cells.size() != 6) fail(ErrorKind::io, "malformed row in deviation.csv: " + line);
      DeviationStats row{std::stoull(cells[0]), std::stod(cells[1]), std::stod(cells[2]), std::stod(cells[3])};
      path.rows.push_back(row);
      path.reps = std::stoull(cells[4]);
      path.seed = std::stoull(cells[5]);
      plot << cells[0] << ',' << cells[1] << ',' << cells[2] << ',' << cells[3] << '\n';
      rows.push_back({{"n", row.n}, {"mean", row.mean}});
    }
    json deviation{{"rows", rows}, {"reps", path.reps}, {"seed", path.seed}};
    if (path.rows.size() >= 3) {
      const SlopeFit fit = fit_decay_slope(path);
      deviation["slope"] = fit.slope;
      deviation["r_squared"] = fit.r_squared;
    }
    summary["deviation"] = deviation;
    write_text(dir / "plot_deviation.csv", plot.str());
  }

  if (auto conditions = read_json(dir / "conditions.json")) {
    ++found;
    std::ostringstream plot;
    plot << "condition_id,q,statistic\n";
    for (const char* key : {"C1", "C2"}) {
      const auto& report = (*conditions)[key];
      for (std::size_t i = 0; i < report["q_grid"].size(); ++i) {
        plot << report["condition_id"].get<std::string>() << ',' << report["q_grid"][i] << ','
             << report["statistic"][i].dump() << '\n';
      }
    }
    write_text(dir / "plot_statistic.csv", plot.str());
    json verdicts{{"C1", (*conditions)["C1"]["verdict"]},
                  {"C2", (*conditions)["C2"]["verdict"]},
                  {"gcep_C1", (*conditions)["gcep"]["worst_C1"]["verdict"]},
                  {"gcep_C2", (*conditions)["gcep"]["worst_C2"]["verdict"]},
                  {"all_positive", (*conditions)["all_positive"]}};
    if (conditions->contains("cesaro_cov13")) verdicts["cesaro_cov13"] = (*conditions)["cesaro_cov13"]["verdict"];
    if (conditions->contains("cesaro_cov")) verdicts["cesaro_cov"] = (*conditions)["cesaro_cov"]["verdict"];
    summary["conditions"] = {{"model", (*conditions)["model"]},
                             {"spec_hash", (*conditions)["spec_hash"]},
                             {"seed", (*conditions)["seed"]},
                             {"verdicts", verdicts}};
  }

  if (auto entropy = read_json(dir / "entropy.json")) {
    ++found;
    summary["entropy"] = {{"spec_hash", (*entropy)["spec_hash"]},
                          {"seed", (*entropy)["seed"]},
                          {"reports", (*entropy)["reports"]},
                          {"vc", (*entropy)["vc"]}};
  }

  if (auto inequalities = read_json(dir / "inequalities.json")) {
    ++found;
    summary["inequalities"] = {{"spec_hash", (*inequalities)["spec_hash"]},
                               {"seed", (*inequalities)["seed"]},
                               {"summary", (*inequalities)["summary"]}};
  }

  if (found == 0) fail(ErrorKind::io, "no prior outputs found in " + dir.string());
  write_json(dir / "summary.json", summary);
  if (!config.quiet) out << "merged " << found << " artifact(s) into " << (dir / "summary.json").string() << '\n';
  return 0;
}

}  // namespace

std::string usage() {
  return "usage: gclab <simulate|conditions|entropy|inequalities|report> --config PATH "
         "[--seed N] [--out DIR] [--threads N] [--quiet]\n";
}

int dispatch(const CliConfig& config, std::ostream& out, std::ostream& err) {
  static const std::map<std::string, int (*)(const CliConfig&, std::ostream&)> commands{
      {"simulate", run_simulate},
      {"conditions", run_conditions},
      {"entropy", run_entropy},
      {"inequalities", run_inequalities},
      {"report", run_report},
  };
  const auto it = commands.find(config.subcommand);
  if (it == commands.end()) {
    err << "unknown subcommand '" << config.subcommand << "'\n" << usage();
    return 2;
  }
  try {
    return it->second(config, out);
  } catch (const std::exception& e) {
    err << "gclab " << config.subcommand << ": " << e.what() << '\n';
    return 1;
  }
}

}  // namespace gclab::cli
