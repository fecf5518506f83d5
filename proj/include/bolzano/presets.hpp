#pragma once

// Bolzano's own worked examples, shipped as named presets so the classic
// runs are one-liners.

#include "bolzano/expr.hpp"
#include "bolzano/topology.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bolzano {

struct ExpressionPreset {
    std::string name;
    std::string text;
    std::string note;  // historical remark, when one applies
};

const std::vector<ExpressionPreset>& expression_presets();
const ExpressionPreset* find_expression_preset(const std::string& name);

// "pu41-without-z", "pu41-with-z", "dyadic", "unit-interval"
PointSet1D topo_preset(const std::string& name);
std::vector<std::string> topo_preset_names();

}  // namespace bolzano
