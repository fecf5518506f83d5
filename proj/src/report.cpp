#include "bolzano/report.hpp"

#include "bolzano/error.hpp"

namespace bolzano {

using nlohmann::json;

std::vector<Integer> q_ladder(const Integer& q_max) {
    std::vector<Integer> qs;
    for (Integer q = 1; q < q_max; q *= 10) qs.push_back(q);
    qs.push_back(q_max);
    return qs;
}

json certificate_report(const CertifiedSequence& cs, const std::vector<Integer>& qs) {
    const Certificate& c = cs.cert();
    json out;
    out["kind"] = to_string(c.kind);
    out["rule"] = c.rule;
    if (c.exact_limit) out["exactLimit"] = c.exact_limit->to_string();
    if (c.convergent()) {
        json moduli = json::array();
        for (const Integer& q : qs) {
            json m;
            m["q"] = q.str();
            m["N"] = cs.cauchy_index(q);
            moduli.push_back(m);
        }
        out["cauchyModulus"] = moduli;
    } else if (c.divergent()) {
        json moduli = json::array();
        for (const Integer& q : qs) {
            json m;
            m["M"] = q.str();
            m["N"] = cs.diverge_index(Rational(q));
            moduli.push_back(m);
        }
        out["divergenceModulus"] = moduli;
    }
    return out;
}

json classification_report(const std::string& expr_text, const CertifiedSequence& cs,
                           const Classification& cls, const std::vector<Integer>& qs,
                           const std::string& note) {
    json out;
    out["expression"] = expr_text;
    out["classification"] = to_string(cls.kind);
    out["rule"] = cls.rule;
    if (cls.kind == Classification::Kind::UndeterminedAtFuel) {
        out["fuel"] = cls.fuel;
        out["trend"] = cls.trend;
    }
    out["certificate"] = certificate_report(cs, qs);
    if (cs.cert().convergent()) {
        MeasurableNumber m{cs};
        json fractions = json::array();
        for (const Integer& q : qs) {
            MeasuringFraction f = m.measuring_fraction(q);
            json fj;
            fj["q"] = f.q.str();
            fj["p"] = f.p.str();
            fj["fromIndex"] = f.from_index;
            fj["bracket"] = {f.lower().to_string(), f.upper().to_string()};
            fractions.push_back(fj);
        }
        out["measuringFractions"] = fractions;
    }
    if (!note.empty()) out["note"] = note;
    return out;
}

json comparison_report(const std::string& lhs, const std::string& rhs,
                       const ComparisonVerdict& verdict, const Integer& budget) {
    json out;
    out["lhs"] = lhs;
    out["rhs"] = rhs;
    out["verdict"] = to_string(verdict.kind);
    out["budget"] = budget.str();
    switch (verdict.kind) {
        case ComparisonVerdict::Kind::Less:
        case ComparisonVerdict::Kind::Greater: {
            json w;
            w["q"] = verdict.witness_q.str();
            w["separation"] = verdict.separation.to_string();
            w["fromIndex"] = verdict.separation_from;
            out["witness"] = w;
            break;
        }
        case ComparisonVerdict::Kind::EqualCertified:
            if (verdict.difference)
                out["vanishingModulus"] =
                    certificate_report(*verdict.difference, {Integer(1), Integer(10), Integer(100)});
            break;
        case ComparisonVerdict::Kind::Indistinguishable:
            out["exhaustedBudget"] = verdict.budget.str();
            break;
    }
    return out;
}

json measurable_report(const MeasurableNumber& value, const Integer& q, int decimal_digits) {
    json out;
    MeasuringFraction f = value.measuring_fraction(q);
    out["q"] = f.q.str();
    out["p"] = f.p.str();
    out["bracket"] = {f.lower().to_string(), f.upper().to_string()};
    auto [lo, hi] = value.enclosure(q);
    out["enclosure"] = {lo.to_string(), hi.to_string()};
    Rational a = value.approx(Rational(Integer(1), q));
    out["value"] = a.to_string();
    out["decimal"] = a.to_decimal(decimal_digits);
    return out;
}

json between_report(const BetweenResult& result, const Integer& q) {
    json out;
    out["case"] = to_string(result.kind);
    if (result.witness) out["witness"] = measurable_report(*result.witness, q);
    if (result.second) out["second"] = measurable_report(*result.second, q);
    if (result.extremum) out["extremum"] = measurable_report(*result.extremum, q);
    return out;
}

json completeness_report(const CompletenessVerdict& verdict) {
    json out;
    if (verdict.complete) {
        out["verdict"] = "complete";
        return out;
    }
    out["verdict"] = "fails-at";
    out["point"] = verdict.point.to_string();
    out["gapDescription"] = verdict.gap_description;
    json gaps = json::array();
    for (const Rational& h : verdict.sample_gaps) gaps.push_back(h.to_string());
    out["sampleGaps"] = gaps;
    return out;
}

namespace {

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(Integer(j.get<long long>()));
    if (j.is_string()) {
        auto r = parse_rational(j.get<std::string>());
        if (!r) throw DomainError("invalid rational literal: " + j.get<std::string>());
        return *r;
    }
    throw DomainError("rationals must be integers or \"p/q\" strings");
}

Carrier carrier_from_string(const std::string& s) {
    if (s == "continuum") return Carrier::Continuum;
    if (s == "rationals") return Carrier::Rationals;
    if (s == "dyadics") return Carrier::Dyadics;
    throw DomainError("unknown carrier: " + s);
}

}  // namespace

PointSet1D point_set_from_json(const json& j) {
    PointSet1D s;
    if (j.contains("pieces")) {
        for (const json& pj : j.at("pieces")) {
            Interval p;
            p.lo = rational_from_json(pj.at("lo"));
            p.hi = rational_from_json(pj.at("hi"));
            p.lo_closed = pj.value("loClosed", true);
            p.hi_closed = pj.value("hiClosed", true);
            p.carrier = carrier_from_string(pj.value("carrier", std::string("continuum")));
            s.pieces.push_back(p);
        }
    }
    if (j.contains("isolated"))
        for (const json& ij : j.at("isolated")) s.isolated.push_back(rational_from_json(ij));
    if (j.contains("excluded")) {
        for (const json& fj : j.at("excluded")) {
            GeometricFamily f;
            f.accumulation = rational_from_json(fj.at("c"));
            f.scale = rational_from_json(fj.at("b"));
            f.ratio = rational_from_json(fj.at("r"));
            std::string side = fj.value("side", std::string("left"));
            if (side == "left") f.side = FamilySide::Left;
            else if (side == "right") f.side = FamilySide::Right;
            else throw DomainError("family side must be \"left\" or \"right\"");
            f.exclude_accumulation = fj.value("includeAccumulation", false);
            s.excluded.push_back(f);
        }
    }
    s.validate();
    return s;
}

json point_set_to_json(const PointSet1D& s) {
    json out;
    json pieces = json::array();
    for (const Interval& p : s.pieces) {
        json pj;
        pj["lo"] = p.lo.to_string();
        pj["hi"] = p.hi.to_string();
        pj["loClosed"] = p.lo_closed;
        pj["hiClosed"] = p.hi_closed;
        pj["carrier"] = to_string(p.carrier);
        pieces.push_back(pj);
    }
    out["pieces"] = pieces;
    json iso = json::array();
    for (const Rational& i : s.isolated) iso.push_back(i.to_string());
    out["isolated"] = iso;
    json fams = json::array();
    for (const GeometricFamily& f : s.excluded) {
        json fj;
        fj["c"] = f.accumulation.to_string();
        fj["b"] = f.scale.to_string();
        fj["r"] = f.ratio.to_string();
        fj["side"] = f.side == FamilySide::Left ? "left" : "right";
        fj["includeAccumulation"] = f.exclude_accumulation;
        fams.push_back(fj);
    }
    out["excluded"] = fams;
    return out;
}

}  // namespace bolzano
