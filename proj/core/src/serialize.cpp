#include "gclab/serialize.hpp"

#include <charconv>
#include <ostream>

namespace gclab {
namespace {

nlohmann::json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

void to_json(nlohmann::json& j, const ConditionReport& report) {
  j = nlohmann::json{
      {"condition_id", report.condition_id},
      {"params", {{"delta", report.params.delta}, {"q_max", report.params.q_max}}},
      {"q_grid", report.q_grid},
      {"statistic", report.statistic},
      {"sup", report.running_sup},
      {"slope", optional_number(report.fitted_exponent)},
      {"verdict", to_string(report.verdict)},
  };
}

void to_json(nlohmann::json& j, const CesaroReport& report) {
  j = nlohmann::json{
      {"condition_id", report.condition_id},
      {"params", {{"slope_threshold", report.thresholds.slope}, {"value_threshold", report.thresholds.final_value}}},
      {"q_grid", report.q_grid},
      {"statistic", report.values},
      {"final", report.final_value},
      {"slope", optional_number(report.fitted_slope)},
      {"verdict", report.to_zero ? "to-zero" : "fails"},
  };
}

void to_json(nlohmann::json& j, const LongRunVariance& lrv) {
  j = nlohmann::json{{"value", lrv.value},
                     {"truncation", lrv.truncation},
                     {"tail_estimate", optional_number(lrv.tail_estimate)},
                     {"tail_flag", lrv.tail_flag}};
}

void to_json(nlohmann::json& j, const PhiDecayReport& report) {
  j = nlohmann::json{{"delta", report.delta},
                     {"required_exponent", report.required_exponent},
                     {"slope", optional_number(report.fitted_exponent)},
                     {"eventually_zero", report.eventually_zero},
                     {"verdict", report.pass ? "pass" : "fail"}};
}

void to_json(nlohmann::json& j, const EntropyReport& report) {
  j = nlohmann::json{
      {"family", report.family},
      {"epsilon", report.epsilon},
      {"norm", report.norm},
      {"bracket_count", report.bracket_count},
      {"construction", report.construction},
      {"vc_index", report.vc_index ? nlohmann::json(*report.vc_index) : nlohmann::json(nullptr)},
      {"largest_shattered",
       report.largest_shattered ? nlohmann::json(*report.largest_shattered) : nlohmann::json(nullptr)},
      {"bound_params", {{"K", report.K}, {"r", report.r}}},
      {"bound_value", optional_number(report.vc_bound)},
  };
}

void to_json(nlohmann::json& j, const InequalityVerdict& verdict) {
  j = nlohmann::json{
      {"inequality_id", verdict.inequality_id},
      {"inputs", verdict.inputs},
      {"pair", verdict.pair},
      {"lhs", verdict.lhs},
      {"rhs", verdict.rhs},
      {"margin", verdict.margin},
      {"stderr", optional_number(verdict.std_error)},
      {"holds", verdict.holds},
      {"mode", verdict.mode},
  };
}

void to_json(nlohmann::json& j, const DeviationPath& path) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : path.rows) {
    rows.push_back({{"n", row.n}, {"mean", row.mean}, {"median", row.median}, {"q90", row.q90}});
  }
  j = nlohmann::json{{"model", path.model_id}, {"reps", path.reps}, {"seed", path.seed}, {"rows", rows}};
}

void to_json(nlohmann::json& j, const ConditionSuite& suite) {
  nlohmann::json gcep_rows = nlohmann::json::array();
  for (std::size_t i = 0; i < suite.gcep.x_grid.size(); ++i) {
    gcep_rows.push_back({{"x", suite.gcep.x_grid[i]},
                         {"c1_sup", suite.gcep.c1[i].running_sup},
                         {"c1_verdict", to_string(suite.gcep.c1[i].verdict)},
                         {"c2_sup", suite.gcep.c2[i].running_sup},
                         {"c2_verdict", to_string(suite.gcep.c2[i].verdict)}});
  }
  nlohmann::json scan = nlohmann::json::array();
  for (const auto& e : suite.delta_scan) {
    scan.push_back({{"delta", e.delta},
                    {"C1", to_string(e.c1)},
                    {"C2", to_string(e.c2)},
                    {"gcep_C1", to_string(e.gcep_c1)},
                    {"gcep_C2", to_string(e.gcep_c2)}});
  }
  j = nlohmann::json{
      {"model", suite.model_id},
      {"spec_hash", suite.spec_hash},
      {"seed", suite.seed},
      {"C1", suite.c1},
      {"C2", suite.c2},
      {"gcep", {{"worst_C1", suite.gcep.worst_c1}, {"worst_C2", suite.gcep.worst_c2}, {"per_x", gcep_rows}}},
      {"delta_scan", scan},
      {"all_positive", suite.all_positive()},
  };
  if (suite.cesaro_cov13) j["cesaro_cov13"] = *suite.cesaro_cov13;
  if (suite.cesaro_cov) j["cesaro_cov"] = *suite.cesaro_cov;
  if (suite.long_run_variance) j["long_run_variance"] = *suite.long_run_variance;
  if (!suite.phi_profile.empty()) {
    j["phi_profile"] = suite.phi_profile;
    j["phi_decay"] = suite.phi_checks;
  }
}

void write_condition_csv(std::ostream& os, const ConditionReport& report, bool header) {
  if (header) os << "condition_id,delta,q,statistic\n";
  char buffer[32];
  for (std::size_t i = 0; i < report.q_grid.size(); ++i) {
    os << report.condition_id << ',';
    auto r = std::to_chars(buffer, buffer + sizeof buffer, report.params.delta);
    os.write(buffer, r.ptr - buffer);
    os << ',' << report.q_grid[i] << ',';
    r = std::to_chars(buffer, buffer + sizeof buffer, report.statistic[i]);
    os.write(buffer, r.ptr - buffer);
    os << '\n';
  }
}

}  // namespace gclab
