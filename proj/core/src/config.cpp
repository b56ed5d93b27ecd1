#include "gclab/config.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "gclab/error.hpp"

namespace gclab {
namespace {

using boost::property_tree::ptree;

[[noreturn]] void schema_error(const std::string& key, const std::string& message) {
  fail(ErrorKind::config, key + ": " + message);
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    schema_error(key, "expected a finite number, got '" + t + "'");
  }
  return v;
}

std::uint64_t parse_uint(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    schema_error(key, "expected a nonnegative integer, got '" + t + "'");
  }
  return v;
}

std::vector<double> parse_doubles(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_double(key, item));
  if (out.empty()) schema_error(key, "expected a comma-separated list of numbers");
  return out;
}

std::vector<std::size_t> parse_uints(const std::string& key, const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_uint(key, item));
  if (out.empty()) schema_error(key, "expected a comma-separated list of integers");
  return out;
}

std::string format_double(double v) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, v);
  return std::string(buffer, result.ptr);
}

template <typename T, typename Fmt>
std::string join(const std::vector<T>& xs, Fmt fmt, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += sep;
    out += fmt(xs[i]);
  }
  return out;
}

const std::map<std::string, std::set<std::string>>& model_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"iid-uniform", {"lo", "hi"}},
      {"iid-normal", {"mean", "sd"}},
      {"iid-point", {"value"}},
      {"gaussian-ar1", {"rho"}},
      {"moving-average", {"coeffs", "innovation_sd"}},
      {"markov-chain", {"transition", "values"}},
      {"constant-uniform", {"lo", "hi"}},
      {"constant-normal", {"mean", "sd"}},
  };
  return keys;
}

const std::map<std::string, std::set<std::string>>& section_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"model", {"kind", "lo", "hi", "mean", "sd", "value", "rho", "coeffs", "innovation_sd", "transition", "values"}},
      {"simulate", {"n_grid", "reps"}},
      {"conditions", {"delta", "delta_grid", "x_grid", "q_max", "cesaro_q_max", "lrv_truncation", "r_max"}},
      {"entropy", {"epsilons", "K", "r", "probe_budget"}},
      {"inequalities", {"newman_trials", "newman_samples"}},
      {"run", {"seed", "output_dir"}},
  };
  return keys;
}

void check_delta(const std::string& key, double delta) {
  if (!(delta > 0.0 && delta < 3.0)) schema_error(key, "must satisfy delta ∈ (0,3)");
}

void validate(const ExperimentSpec& spec) {
  // Model constraints are checked by constructing the model.
  try {
    (void)build_model(spec.model);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::config) throw;
    std::string key = "model";
    const std::string msg = e.what();
    if (spec.model.kind == "gaussian-ar1") key = "model.rho";
    if (spec.model.kind == "moving-average") key = "model.coeffs";
    if (spec.model.kind == "markov-chain") key = "model.transition";
    if (spec.model.kind.ends_with("-uniform")) key = "model.lo/hi";
    if (spec.model.kind.ends_with("-normal")) key = "model.sd";
    schema_error(key, msg.substr(msg.find(": ") + 2));
  }
  if (spec.n_grid.empty()) schema_error("simulate.n_grid", "must be nonempty");
  for (std::size_t i = 0; i < spec.n_grid.size(); ++i) {
    if (spec.n_grid[i] == 0 || (i > 0 && spec.n_grid[i] <= spec.n_grid[i - 1])) {
      schema_error("simulate.n_grid", "must be positive and strictly increasing");
    }
  }
  if (spec.reps < 1) schema_error("simulate.reps", "must be >= 1");
  check_delta("conditions.delta", spec.delta);
  if (spec.delta_grid.empty()) schema_error("conditions.delta_grid", "must be nonempty");
  for (double d : spec.delta_grid) check_delta("conditions.delta_grid", d);
  if (!std::is_sorted(spec.delta_grid.begin(), spec.delta_grid.end())) {
    schema_error("conditions.delta_grid", "must be sorted");
  }
  if (!std::is_sorted(spec.x_grid.begin(), spec.x_grid.end())) schema_error("conditions.x_grid", "must be sorted");
  if (spec.q_max < 4) schema_error("conditions.q_max", "must be >= 4");
  if (spec.cesaro_q_max < 8) schema_error("conditions.cesaro_q_max", "must be >= 8");
  if (spec.lrv_truncation < 1) schema_error("conditions.lrv_truncation", "must be >= 1");
  if (spec.r_max < 6) schema_error("conditions.r_max", "must be >= 6");
  if (spec.epsilons.empty()) schema_error("entropy.epsilons", "must be nonempty");
  for (double e : spec.epsilons) {
    if (!(e > 0.0 && e <= 1.0)) schema_error("entropy.epsilons", "each epsilon must lie in (0,1]");
  }
  if (!(spec.K > 0.0)) schema_error("entropy.K", "must be > 0");
  if (!(spec.r > 1.0)) schema_error("entropy.r", "must be > 1");
  if (spec.probe_budget < 1 || spec.probe_budget > 20) schema_error("entropy.probe_budget", "must lie in [1,20]");
  if (spec.newman_samples < 2) schema_error("inequalities.newman_samples", "must be >= 2");
  if (spec.output_dir.empty()) schema_error("run.output_dir", "must be nonempty");
}

}  // namespace

std::vector<std::size_t> default_n_grid() {
  std::vector<std::size_t> grid;
  for (int k = 6; k <= 14; ++k) grid.push_back(std::size_t{1} << k);
  return grid;
}

ExperimentSpec parse_config(const std::string& text) {
  ptree tree;
  try {
    std::istringstream is(text);
    boost::property_tree::ini_parser::read_ini(is, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    fail(ErrorKind::config, std::string("parse error: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
  }

  ExperimentSpec spec;
  spec.n_grid = default_n_grid();
  bool saw_kind = false;

  for (const auto& [section, body] : tree) {
    const auto known = section_keys().find(section);
    if (!body.data().empty()) schema_error(section, "top-level keys are not allowed; use a [section]");
    if (known == section_keys().end()) schema_error(section, "unknown section");
    for (const auto& [name, node] : body) {
      const std::string key = section + "." + name;
      if (!known->second.contains(name)) schema_error(key, "unknown key");
      if (!node.empty()) schema_error(key, "nested values are not allowed");
      const std::string value = trim(node.data());

      if (section == "model") {
        auto& m = spec.model;
        if (name == "kind") {
          if (!model_keys().contains(value)) schema_error(key, "unknown model kind '" + value + "'");
          m.kind = value;
          saw_kind = true;
        } else if (name == "lo") {
          m.lo = parse_double(key, value);
        } else if (name == "hi") {
          m.hi = parse_double(key, value);
        } else if (name == "mean") {
          m.mean = parse_double(key, value);
        } else if (name == "sd") {
          m.sd = parse_double(key, value);
        } else if (name == "value") {
          m.value = parse_double(key, value);
        } else if (name == "rho") {
          m.rho = parse_double(key, value);
        } else if (name == "coeffs") {
          m.coeffs = parse_doubles(key, value);
        } else if (name == "innovation_sd") {
          m.innovation_sd = parse_double(key, value);
        } else if (name == "transition") {
          m.transition.clear();
          for (const auto& row : split(value, ';')) m.transition.push_back(parse_doubles(key, row));
        } else if (name == "values") {
          m.values = parse_doubles(key, value);
        }
      } else if (section == "simulate") {
        if (name == "n_grid") spec.n_grid = parse_uints(key, value);
        if (name == "reps") spec.reps = parse_uint(key, value);
      } else if (section == "conditions") {
        if (name == "delta") spec.delta = parse_double(key, value);
        if (name == "delta_grid") spec.delta_grid = parse_doubles(key, value);
        if (name == "x_grid") spec.x_grid = parse_doubles(key, value);
        if (name == "q_max") spec.q_max = parse_uint(key, value);
        if (name == "cesaro_q_max") spec.cesaro_q_max = parse_uint(key, value);
        if (name == "lrv_truncation") spec.lrv_truncation = parse_uint(key, value);
        if (name == "r_max") spec.r_max = parse_uint(key, value);
      } else if (section == "entropy") {
        if (name == "epsilons") spec.epsilons = parse_doubles(key, value);
        if (name == "K") spec.K = parse_double(key, value);
        if (name == "r") spec.r = parse_double(key, value);
        if (name == "probe_budget") spec.probe_budget = parse_uint(key, value);
      } else if (section == "inequalities") {
        if (name == "newman_trials") spec.newman_trials = parse_uint(key, value);
        if (name == "newman_samples") spec.newman_samples = parse_uint(key, value);
      } else if (section == "run") {
        if (name == "seed") spec.seed = parse_uint(key, value);
        if (name == "output_dir") spec.output_dir = value;
      }
    }
  }

  if (!saw_kind) schema_error("model.kind", "is required");
  if (const auto model_section = tree.get_child_optional("model")) {
    const auto& allowed = model_keys().at(spec.model.kind);
    for (const auto& [name, node] : *model_section) {
      if (name != "kind" && !allowed.contains(name)) {
        schema_error("model." + name, "is not a parameter of kind " + spec.model.kind);
      }
    }
  }
  validate(spec);
  return spec;
}

ExperimentSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io, "cannot open config file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const ExperimentSpec& spec) {
  const auto d = [](double v) { return format_double(v); };
  const auto u = [](std::size_t v) { return std::to_string(v); };
  const auto& m = spec.model;
  std::ostringstream os;
  os << "[model]\nkind = " << m.kind << '\n';
  const auto& allowed = model_keys().at(m.kind);
  if (allowed.contains("lo")) os << "lo = " << d(m.lo) << "\nhi = " << d(m.hi) << '\n';
  if (allowed.contains("mean")) os << "mean = " << d(m.mean) << "\nsd = " << d(m.sd) << '\n';
  if (allowed.contains("value")) os << "value = " << d(m.value) << '\n';
  if (allowed.contains("rho")) os << "rho = " << d(m.rho) << '\n';
  if (allowed.contains("coeffs")) {
    os << "coeffs = " << join(m.coeffs, d) << "\ninnovation_sd = " << d(m.innovation_sd) << '\n';
  }
  if (allowed.contains("transition")) {
    os << "transition = "
       << join(m.transition, [&](const std::vector<double>& row) { return join(row, d); }, "; ") << '\n';
    os << "values = " << join(m.values, d) << '\n';
  }
  os << "\n[simulate]\nn_grid = " << join(spec.n_grid, u) << "\nreps = " << spec.reps << '\n';
  os << "\n[conditions]\ndelta = " << d(spec.delta) << "\ndelta_grid = " << join(spec.delta_grid, d) << '\n';
  if (!spec.x_grid.empty()) os << "x_grid = " << join(spec.x_grid, d) << '\n';
  os << "q_max = " << spec.q_max << "\ncesaro_q_max = " << spec.cesaro_q_max
     << "\nlrv_truncation = " << spec.lrv_truncation << "\nr_max = " << spec.r_max << '\n';
  os << "\n[entropy]\nepsilons = " << join(spec.epsilons, d) << "\nK = " << d(spec.K) << "\nr = " << d(spec.r)
     << "\nprobe_budget = " << spec.probe_budget << '\n';
  os << "\n[inequalities]\nnewman_trials = " << spec.newman_trials << "\nnewman_samples = " << spec.newman_samples
     << '\n';
  os << "\n[run]\nseed = " << spec.seed << "\noutput_dir = " << spec.output_dir << '\n';
  return os.str();
}

std::string spec_hash(const ExperimentSpec& spec) {
  // Where results land does not change them.
  ExperimentSpec hashed = spec;
  hashed.output_dir = "-";
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : serialize_config(hashed)) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(h));
  return buffer;
}

StationaryModel build_model(const ModelSpec& m) {
  if (m.kind == "iid-uniform") return make_iid(Marginal::uniform(m.lo, m.hi));
  if (m.kind == "iid-normal") return make_iid(Marginal::normal(m.mean, m.sd));
  if (m.kind == "iid-point") return make_iid(Marginal::point(m.value));
  if (m.kind == "gaussian-ar1") return make_gaussian_ar1(m.rho);
  if (m.kind == "moving-average") return make_moving_average(m.coeffs, m.innovation_sd);
  if (m.kind == "markov-chain") return make_markov_chain(MarkovChainSpec::create(m.transition, m.values));
  if (m.kind == "constant-uniform") return make_perfectly_dependent(Marginal::uniform(m.lo, m.hi));
  if (m.kind == "constant-normal") return make_perfectly_dependent(Marginal::normal(m.mean, m.sd));
  fail(ErrorKind::config, "model.kind: unknown model kind '" + m.kind + "'");
}

std::vector<double> resolve_x_grid(const ExperimentSpec& spec, const StationaryModel& model) {
  if (!spec.x_grid.empty()) return spec.x_grid;
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(model.marginal().quantile(0.025 + 0.0475 * i));
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace gclab
