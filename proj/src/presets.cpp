#include "bolzano/presets.hpp"

#include "bolzano/error.hpp"

namespace bolzano {

const std::vector<ExpressionPreset>& expression_presets() {
    static const std::vector<ExpressionPreset> presets{
        {"A", "sum(n, n)", ""},
        {"B", "sum(n, (-1)^(n+1)/2^n)", ""},
        {"C", "prod(n, 1 - 1/2^n)",
         "Bolzano listed this product among the infinitely small numbers, but its partial "
         "products stay above 7/25 and converge to about 0.2887880951; it is measurable and "
         "not infinitely small."},
        {"D", "3 + 5/sum(n, 1)", ""},
    };
    return presets;
}

const ExpressionPreset* find_expression_preset(const std::string& name) {
    for (const ExpressionPreset& p : expression_presets())
        if (p.name == name) return &p;
    return nullptr;
}

PointSet1D topo_preset(const std::string& name) {
    // the PU41 line runs from a = 0 to z = 1; the omitted midpoints are
    // a_n = z - (z - a)/2^n
    auto pu41 = [](bool include_z) {
        PointSet1D s;
        s.pieces.push_back({Rational(0), Rational(1), true, true, Carrier::Continuum});
        GeometricFamily f;
        f.accumulation = Rational(1);
        f.scale = Rational(1);
        f.ratio = Rational(1, 2);
        f.side = FamilySide::Left;
        f.exclude_accumulation = !include_z;
        s.excluded.push_back(f);
        return s;
    };
    if (name == "pu41-without-z") return pu41(false);
    if (name == "pu41-with-z") return pu41(true);
    if (name == "dyadic") {
        PointSet1D s;
        s.pieces.push_back({Rational(0), Rational(1), true, true, Carrier::Dyadics});
        return s;
    }
    if (name == "unit-interval") {
        PointSet1D s;
        s.pieces.push_back({Rational(0), Rational(1), true, true, Carrier::Continuum});
        return s;
    }
    throw DomainError("unknown point-set preset: " + name);
}

std::vector<std::string> topo_preset_names() {
    return {"pu41-without-z", "pu41-with-z", "dyadic", "unit-interval"};
}

}  // namespace bolzano
