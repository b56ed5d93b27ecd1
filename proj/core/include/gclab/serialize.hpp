#pragma once

#include <iosfwd>
#include <nlohmann/json.hpp>

#include "gclab/conditions.hpp"
#include "gclab/empirical.hpp"
#include "gclab/entropy.hpp"
#include "gclab/inequalities.hpp"
#include "gclab/montecarlo.hpp"

namespace gclab {

/// {condition_id, params, q_grid, statistic, sup, slope, verdict}
void to_json(nlohmann::json& j, const ConditionReport& report);
void to_json(nlohmann::json& j, const CesaroReport& report);
void to_json(nlohmann::json& j, const LongRunVariance& lrv);
void to_json(nlohmann::json& j, const PhiDecayReport& report);
/// {family, epsilon, norm, bracket_count, vc_index, bound_params, bound_value}
void to_json(nlohmann::json& j, const EntropyReport& report);
/// {inequality_id, inputs, lhs, rhs, margin, stderr, holds, mode}
void to_json(nlohmann::json& j, const InequalityVerdict& verdict);
void to_json(nlohmann::json& j, const DeviationPath& path);
void to_json(nlohmann::json& j, const ConditionSuite& suite);

/// One row per q: condition_id,delta,q,statistic.
void write_condition_csv(std::ostream& os, const ConditionReport& report, bool header = true);

}  // namespace gclab
