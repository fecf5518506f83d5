// bolzano: exact arithmetic on infinite number expressions, measurable
// numbers, their completeness constructions, and the 1-D neighbour
// criterion.
//
// Exit codes: 0 success, 2 parse error, 3 precondition failure,
// 4 comparison budget exhausted, 1 unexpected error.

#include "bolzano/audit.hpp"
#include "bolzano/error.hpp"
#include "bolzano/measurable.hpp"
#include "bolzano/presets.hpp"
#include "bolzano/report.hpp"
#include "bolzano/theorems.hpp"
#include "bolzano/topology.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace bolzano;
using nlohmann::json;

struct RunConfig {
    long long q = 1000000;
    long long fuel = 10000;
    std::string format = "text";
    bool trace = false;

    Integer precision() const { return Integer(q); }
    bool json_mode() const { return format == "json"; }
};

void add_common_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--q", cfg.q, "precision denominator (default 10^6)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--fuel", cfg.fuel, "scan depth for uncertified sequences (default 10^4)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--format", cfg.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_flag("--trace", cfg.trace, "include refinement traces in reports");
}

void print_report(const json& j, const RunConfig& cfg) {
    if (cfg.json_mode()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    // text mirror of the same data
    std::function<void(const json&, int)> walk = [&](const json& node, int depth) {
        std::string pad(std::size_t(depth) * 2, ' ');
        if (node.is_object()) {
            for (auto it = node.begin(); it != node.end(); ++it) {
                if (it.value().is_structured()) {
                    std::cout << pad << it.key() << ":\n";
                    walk(it.value(), depth + 1);
                } else {
                    std::cout << pad << it.key() << ": "
                              << (it.value().is_string() ? it.value().get<std::string>()
                                                         : it.value().dump())
                              << "\n";
                }
            }
        } else if (node.is_array()) {
            for (const json& item : node) {
                if (item.is_structured()) {
                    std::cout << pad << "-\n";
                    walk(item, depth + 1);
                } else {
                    std::cout << pad << "- "
                              << (item.is_string() ? item.get<std::string>() : item.dump())
                              << "\n";
                }
            }
        }
    };
    walk(j, 0);
}

// expression arguments accept "preset:A" style references
struct ResolvedExpression {
    std::string text;
    std::string note;
};

ResolvedExpression resolve_expression(const std::string& arg) {
    if (arg.rfind("preset:", 0) == 0) {
        std::string name = arg.substr(7);
        const ExpressionPreset* p = find_expression_preset(name);
        if (!p) throw DomainError("unknown expression preset: " + name);
        return {p->text, p->note};
    }
    return {arg, ""};
}

int run_classify(const std::vector<std::string>& exprs, const std::string& file,
                 const RunConfig& cfg) {
    std::vector<ResolvedExpression> items;
    for (const std::string& e : exprs) items.push_back(resolve_expression(e));
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw DomainError("cannot open file: " + file);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty()) items.push_back(resolve_expression(line));
        }
    }
    if (items.empty()) throw DomainError("no expressions given");
    json out = json::array();
    for (const ResolvedExpression& item : items) {
        ExprPtr e = parse_expression(item.text);
        CertifiedSequence cs = certify(e);
        Classification cls = classify(cs, cfg.fuel);
        out.push_back(
            classification_report(to_text(*e), cs, cls, q_ladder(cfg.precision()), item.note));
    }
    print_report(out.size() == 1 ? out[0] : out, cfg);
    return 0;
}

int run_compare(const std::string& lhs, const std::string& rhs, const RunConfig& cfg) {
    ResolvedExpression a = resolve_expression(lhs);
    ResolvedExpression b = resolve_expression(rhs);
    MeasurableNumber x = MeasurableNumber::from_text(a.text);
    MeasurableNumber y = MeasurableNumber::from_text(b.text);
    ComparisonVerdict v = compare(x, y, cfg.precision());
    print_report(comparison_report(a.text, b.text, v, cfg.precision()), cfg);
    return v.kind == ComparisonVerdict::Kind::Indistinguishable ? 4 : 0;
}

int run_approx(const std::string& expr, const RunConfig& cfg) {
    ResolvedExpression a = resolve_expression(expr);
    MeasurableNumber x = MeasurableNumber::from_text(a.text);
    json out = measurable_report(x, cfg.precision());
    out["expression"] = a.text;
    if (cfg.trace) {
        json ladder = json::array();
        for (const Integer& q : q_ladder(cfg.precision())) {
            MeasuringFraction f = x.measuring_fraction(q);
            json fj;
            fj["q"] = f.q.str();
            fj["p"] = f.p.str();
            fj["bracket"] = {f.lower().to_string(), f.upper().to_string()};
            ladder.push_back(fj);
        }
        out["trace"] = ladder;
    }
    print_report(out, cfg);
    return 0;
}

json refinement_trace(const MeasurableNumber& value, const RunConfig& cfg) {
    json trace = json::array();
    for (const Integer& q : q_ladder(cfg.precision())) {
        auto [lo, hi] = value.enclosure(q);
        json t;
        t["q"] = q.str();
        t["enclosure"] = {lo.to_string(), hi.to_string()};
        trace.push_back(t);
    }
    return trace;
}

int run_sup(const std::string& poly_text, const std::string& lo, const std::string& hi,
            const std::string& var, const RunConfig& cfg) {
    auto lo_r = parse_rational(lo);
    auto hi_r = parse_rational(hi);
    if (!lo_r || !hi_r) throw DomainError("interval endpoints must be rationals");
    Polynomial p = Polynomial::parse(poly_text, var);
    BoundaryPredicate pred = BoundaryPredicate::from_polynomial(p, *lo_r, *hi_r);
    MeasurableNumber a = greatest_boundary(pred, cfg.precision());
    json out = measurable_report(a, cfg.precision());
    out["property"] = p.to_text(var) + " < 0";
    out["lowerWitness"] = lo_r->to_string();
    out["counterWitness"] = hi_r->to_string();
    if (cfg.trace) out["trace"] = refinement_trace(a, cfg);
    print_report(out, cfg);
    return 0;
}

int run_ivt(const std::string& f_text, const std::string& g_text, const std::string& alpha,
            const std::string& beta, const std::string& var, const RunConfig& cfg) {
    auto a = parse_rational(alpha);
    auto b = parse_rational(beta);
    if (!a || !b) throw DomainError("interval endpoints must be rationals");
    ContinuousFunction f = ContinuousFunction::from_polynomial(Polynomial::parse(f_text, var));
    ContinuousFunction g = g_text.empty()
                               ? ContinuousFunction::constant(Rational(0))
                               : ContinuousFunction::from_polynomial(Polynomial::parse(g_text, var));
    MeasurableNumber r = intermediate_value(f, g, *a, *b, cfg.precision());
    json out = measurable_report(r, cfg.precision());
    out["f"] = f.poly->to_text(var);
    out["g"] = g.poly->to_text(var);
    out["interval"] = {a->to_string(), b->to_string()};
    Rational rv = r.approx(Rational(Integer(1), Integer(2) * cfg.precision()));
    out["residue"] = (f.eval(rv) - g.eval(rv)).to_string();
    if (cfg.trace) out["trace"] = refinement_trace(r, cfg);
    print_report(out, cfg);
    return 0;
}

int run_between(const std::string& mode, const std::string& d_text, long long n0,
                const RunConfig& cfg) {
    BetweenResult result = [&] {
        if (mode == "bounded") {
            // the classic bounded-gap pair: X up to 0, Y down to 1
            VariableQuantityPair pair;
            pair.lower = [](Index k) {
                return MeasurableNumber::literal(Rational(Integer(-1), Integer(k)));
            };
            pair.upper = [](Index k) {
                return MeasurableNumber::literal(Rational(1) + Rational(Integer(1), Integer(k)));
            };
            pair.mode = GapMode::BoundedBelow;
            pair.gap_floor = Rational(Integer(1), Integer(n0));
            return between_sets(pair, 32, cfg.precision());
        }
        auto d = parse_rational(d_text);
        if (!d) throw DomainError("--d must be a rational");
        if (!d->is_positive()) throw PreconditionError("--d must be positive");
        MeasurableNumber dm = MeasurableNumber::literal(*d);
        if (mode == "vanishing") return neighbour_realization(dm, false, cfg.precision());
        if (mode == "attained") return neighbour_realization(dm, true, cfg.precision());
        throw DomainError("unknown mode: " + mode);
    }();
    json out = between_report(result, cfg.precision());
    out["mode"] = mode;
    print_report(out, cfg);
    return 0;
}

int run_topo(const std::string& file, const std::string& preset, const RunConfig& cfg) {
    PointSet1D s;
    if (!preset.empty()) {
        s = topo_preset(preset);
    } else if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw DomainError("cannot open file: " + file);
        json j = json::parse(in);
        s = point_set_from_json(j);
    } else {
        throw DomainError("topo needs a JSON set description file or --preset");
    }
    CompletenessVerdict v = bolzano_complete(s);
    json out = completeness_report(v);
    if (cfg.trace) out["set"] = point_set_to_json(s);
    print_report(out, cfg);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bolzano measurable numbers: certified exact arithmetic on infinite number "
                 "expressions, completeness constructions, and the 1-D neighbour criterion"};
    app.require_subcommand(1);

    RunConfig cfg;

    auto* classify_cmd =
        app.add_subcommand("classify", "classify expressions (measurable / infinitely small or "
                                       "great) with measuring fractions");
    std::vector<std::string> classify_exprs;
    std::string classify_file;
    classify_cmd->add_option("expressions", classify_exprs,
                             "expressions or preset:{A,B,C,D} references");
    classify_cmd->add_option("--file", classify_file, "file with one expression per line");
    add_common_flags(classify_cmd, cfg);

    auto* compare_cmd = app.add_subcommand("compare", "compare two expressions up to "
                                                      "infinitesimals");
    std::string cmp_lhs, cmp_rhs;
    compare_cmd->add_option("lhs", cmp_lhs, "left expression")->required();
    compare_cmd->add_option("rhs", cmp_rhs, "right expression")->required();
    add_common_flags(compare_cmd, cfg);

    auto* approx_cmd =
        app.add_subcommand("approx", "measuring fraction and decimal display at precision q");
    std::string approx_expr;
    approx_cmd->add_option("expression", approx_expr, "expression or preset reference")
        ->required();
    add_common_flags(approx_cmd, cfg);

    auto* sup_cmd = app.add_subcommand(
        "sup", "greatest boundary of the property P(x) < 0 between two witnesses");
    std::string sup_poly, sup_lo, sup_hi, sup_var = "x";
    sup_cmd->add_option("poly", sup_poly, "polynomial P, e.g. \"x^2 - 2\"")->required();
    sup_cmd->add_option("lo", sup_lo, "lower witness (property holds here)")->required();
    sup_cmd->add_option("hi", sup_hi, "counter-witness (property fails here)")->required();
    sup_cmd->add_option("--var", sup_var, "variable name (default x)");
    add_common_flags(sup_cmd, cfg);

    auto* ivt_cmd = app.add_subcommand(
        "ivt", "intermediate value: f crosses g between alpha and beta");
    std::string ivt_f, ivt_g, ivt_a, ivt_b, ivt_var = "x";
    ivt_cmd->add_option("f", ivt_f, "polynomial f")->required();
    ivt_cmd->add_option("alpha", ivt_a, "left endpoint")->required();
    ivt_cmd->add_option("beta", ivt_b, "right endpoint")->required();
    ivt_cmd->add_option("--phi", ivt_g, "polynomial to cross (default 0)");
    ivt_cmd->add_option("--var", ivt_var, "variable name (default x)");
    add_common_flags(ivt_cmd, cfg);

    auto* between_cmd = app.add_subcommand(
        "between", "between two variable quantities: bounded, vanishing, or attained gap");
    std::string between_mode = "vanishing", between_d = "1/3";
    long long between_n0 = 1;
    between_cmd->add_option("--mode", between_mode, "bounded | vanishing | attained")
        ->check(CLI::IsMember({"bounded", "vanishing", "attained"}));
    between_cmd->add_option("--d", between_d, "the distance d (vanishing/attained modes)");
    between_cmd->add_option("--n0", between_n0, "gap floor 1/n0 (bounded mode)")
        ->check(CLI::PositiveNumber);
    add_common_flags(between_cmd, cfg);

    auto* topo_cmd =
        app.add_subcommand("topo", "decide the neighbour-based completeness of a 1-D point set");
    std::string topo_file, topo_preset_name;
    topo_cmd->add_option("set", topo_file, "JSON set description file");
    topo_cmd->add_option("--preset", topo_preset_name,
                         "pu41-without-z | pu41-with-z | dyadic | unit-interval");
    add_common_flags(topo_cmd, cfg);

    CLI11_PARSE(app, argc, argv);

    try {
        if (classify_cmd->parsed()) return run_classify(classify_exprs, classify_file, cfg);
        if (compare_cmd->parsed()) return run_compare(cmp_lhs, cmp_rhs, cfg);
        if (approx_cmd->parsed()) return run_approx(approx_expr, cfg);
        if (sup_cmd->parsed()) return run_sup(sup_poly, sup_lo, sup_hi, sup_var, cfg);
        if (ivt_cmd->parsed()) return run_ivt(ivt_f, ivt_g, ivt_a, ivt_b, ivt_var, cfg);
        if (between_cmd->parsed()) return run_between(between_mode, between_d, between_n0, cfg);
        if (topo_cmd->parsed()) return run_topo(topo_file, topo_preset_name, cfg);
    } catch (const ParseError& ex) {
        std::cerr << "parse error: " << ex.what() << "\n";
        return 2;
    } catch (const PreconditionError& ex) {
        std::cerr << "precondition failure: " << ex.what() << "\n";
        return 3;
    } catch (const BudgetExhausted& ex) {
        std::cerr << "budget exhausted: " << ex.what() << "\n";
        return 4;
    } catch (const DomainError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 3;
    } catch (const std::exception& ex) {
        std::cerr << "unexpected error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
