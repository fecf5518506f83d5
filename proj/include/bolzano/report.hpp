#pragma once

// JSON report builders and the point-set JSON format. Text rendering in the
// CLI derives from the same data, so both formats report identical verdicts.

#include "bolzano/measurable.hpp"
#include "bolzano/theorems.hpp"
#include "bolzano/topology.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace bolzano {

// kind, rule, and N(q) evaluated at the report's q values
nlohmann::json certificate_report(const CertifiedSequence& cs, const std::vector<Integer>& qs);

nlohmann::json classification_report(const std::string& expr_text, const CertifiedSequence& cs,
                                     const Classification& cls, const std::vector<Integer>& qs,
                                     const std::string& note = "");

nlohmann::json comparison_report(const std::string& lhs, const std::string& rhs,
                                 const ComparisonVerdict& verdict, const Integer& budget);

nlohmann::json measurable_report(const MeasurableNumber& value, const Integer& q,
                                 int decimal_digits = 12);

nlohmann::json between_report(const BetweenResult& result, const Integer& q);

nlohmann::json completeness_report(const CompletenessVerdict& verdict);

// {pieces:[{lo,hi,loClosed,hiClosed,carrier}], isolated:[...],
//  excluded:[{c,b,r,side,includeAccumulation}]}
PointSet1D point_set_from_json(const nlohmann::json& j);
nlohmann::json point_set_to_json(const PointSet1D& s);

// q values 1, 10, 100, ... up to and including q_max
std::vector<Integer> q_ladder(const Integer& q_max);

}  // namespace bolzano
