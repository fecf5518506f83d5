#include "bolzano/measurable.hpp"

#include "bolzano/audit.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace bolzano {

std::string to_string(Classification::Kind k) {
    switch (k) {
        case Classification::Kind::Measurable: return "measurable";
        case Classification::Kind::InfinitelySmallPositive: return "infinitely small positive";
        case Classification::Kind::InfinitelySmallNegative: return "infinitely small negative";
        case Classification::Kind::InfinitelyGreatPositive: return "infinitely great positive";
        case Classification::Kind::InfinitelyGreatNegative: return "infinitely great negative";
        case Classification::Kind::UndeterminedAtFuel: return "undetermined at fuel";
    }
    return "?";
}

Classification classify(const CertifiedSequence& s, Index fuel) {
    const Certificate& c = s.cert();
    Classification out;
    out.rule = c.rule;
    switch (c.kind) {
        case CertKind::DivergesAbove:
            out.kind = Classification::Kind::InfinitelyGreatPositive;
            return out;
        case CertKind::DivergesBelow:
            out.kind = Classification::Kind::InfinitelyGreatNegative;
            return out;
        case CertKind::Vanishes: {
            auto sign = derive_eventual_sign(s);
            if (sign && sign->sign > 0) out.kind = Classification::Kind::InfinitelySmallPositive;
            else if (sign && sign->sign < 0)
                out.kind = Classification::Kind::InfinitelySmallNegative;
            else out.kind = Classification::Kind::Measurable;  // exactly zero or unsigned
            return out;
        }
        case CertKind::Cauchy:
            out.kind = Classification::Kind::Measurable;
            return out;
        case CertKind::Uncertified: {
            if (fuel < 1) throw DomainError("fuel must be >= 1");
            out.kind = Classification::Kind::UndeterminedAtFuel;
            out.fuel = fuel;
            // advisory scan on a geometric index ladder
            std::vector<Index> idx;
            for (Index n = 1; n <= std::min<Index>(fuel, 16); ++n) idx.push_back(n);
            for (Index n = 32; n <= fuel; n *= 2) idx.push_back(n);
            if (idx.empty() || idx.back() != fuel) idx.push_back(fuel);
            bool inc = true, dec = true, pos = true, neg = true;
            Rational prev, last;
            bool first = true;
            try {
                for (Index n : idx) {
                    Rational v = s.at(n);
                    if (!first) {
                        if (v < prev) inc = false;
                        if (v > prev) dec = false;
                    }
                    if (!v.is_positive()) pos = false;
                    if (!v.is_negative()) neg = false;
                    prev = v;
                    last = v;
                    first = false;
                }
                std::ostringstream os;
                os << (inc ? "non-decreasing" : dec ? "non-increasing" : "oscillating");
                if (pos) os << ", all sampled values positive";
                if (neg) os << ", all sampled values negative";
                os << ", S_" << idx.back() << " = " << last.to_decimal(6);
                out.trend = os.str();
            } catch (const EvalError& ex) {
                out.trend = std::string("evaluation error during scan: ") + ex.what();
            }
            return out;
        }
    }
    throw InternalError("unreachable certificate kind");
}

// ---------------------------------------------------------------------------
// MeasurableNumber

MeasurableNumber::MeasurableNumber(CertifiedSequence base) : base_(std::move(base)) {
    if (!base_.cert().convergent())
        throw DomainError("not a measurable number: certificate is " +
                          to_string(base_.cert().kind) + " (" + base_.label() + ")");
}

MeasurableNumber MeasurableNumber::literal(const Rational& v) {
    return MeasurableNumber(certified_constant(v));
}

MeasurableNumber MeasurableNumber::from_expression(const ExprPtr& e) {
    return MeasurableNumber(certify(e));
}

MeasurableNumber MeasurableNumber::from_text(std::string_view text) {
    return from_expression(parse_expression(text));
}

MeasuringFraction MeasurableNumber::measuring_fraction(const Integer& q) const {
    if (q < 1) throw DomainError("measuring fraction denominator must be >= 1");
    // With radius(N) <= 1/(4q): |S_n - S_N| <= 1/(2q) for n >= N, and the
    // nearest integer puts |S_N - p/q| <= 1/(2q), so the corrected bracket
    // (p-1)/q <= S_n <= (p+1)/q holds from N on.
    Index n = base_.radius_index(Rational(Integer(1), Integer(4) * q));
    Rational v = base_.at(n);
    Integer p = nearest_integer(Rational(q) * v);
    audit::emit_fraction(base_, q, p, n);
    return MeasuringFraction{q, p, n};
}

Rational MeasurableNumber::approx(const Rational& eps) const {
    if (!eps.is_positive()) throw DomainError("approximation tolerance must be positive");
    return base_.approx_within(eps);
}

std::pair<Rational, Rational> MeasurableNumber::enclosure(const Integer& q) const {
    if (q < 1) throw DomainError("enclosure denominator must be >= 1");
    Rational a = approx(Rational(Integer(1), Integer(8) * q));
    Rational w(Integer(1), q);
    return {a - w, a + w};
}

// ---------------------------------------------------------------------------
// Comparison

std::string to_string(ComparisonVerdict::Kind k) {
    switch (k) {
        case ComparisonVerdict::Kind::Less: return "less";
        case ComparisonVerdict::Kind::Greater: return "greater";
        case ComparisonVerdict::Kind::EqualCertified: return "equal-certified";
        case ComparisonVerdict::Kind::Indistinguishable: return "indistinguishable-at-budget";
    }
    return "?";
}

namespace {

CertifiedSequence difference_sequence(const MeasurableNumber& x, const MeasurableNumber& y) {
    if (x.base().source() && y.base().source()) {
        ExprPtr diff = Expression::binary(BinOpKind::Sub, x.base().source(), y.base().source());
        return certify(ring_normal_form(diff));
    }
    return compose(BinOpKind::Sub, x.base(), y.base());
}

ComparisonVerdict strict_verdict(int sign, Rational separation, Index from,
                                 const CertifiedSequence& diff) {
    ComparisonVerdict v;
    v.kind = sign > 0 ? ComparisonVerdict::Kind::Greater : ComparisonVerdict::Kind::Less;
    v.witness_q = ceil_int(separation.reciprocal());
    if (v.witness_q < 1) v.witness_q = 1;
    v.separation = std::move(separation);
    v.separation_from = from;
    v.difference = diff;
    return v;
}

}  // namespace

ComparisonVerdict compare(const MeasurableNumber& x, const MeasurableNumber& y,
                          const Integer& budget) {
    if (budget < 1) throw DomainError("comparison budget must be >= 1");
    ComparisonVerdict v;
    if (x.core() == y.core()) {
        v.kind = ComparisonVerdict::Kind::EqualCertified;
        Certificate zero;
        zero.kind = CertKind::Vanishes;
        zero.rule = "identical-sequences";
        zero.radius = [](Index) { return Rational(0); };
        zero.exact_limit = Rational(0);
        v.difference = CertifiedSequence(
            Sequence::combine(BinOpKind::Sub, x.base().sequence(), y.base().sequence()),
            std::move(zero), nullptr, "(" + x.base().label() + " - " + y.base().label() + ")");
        audit::emit_certificate(*v.difference);
        return v;
    }

    CertifiedSequence d = difference_sequence(x, y);
    // the ring-normalized form occasionally falls outside the recognizers;
    // the direct modulus composition always stays convergent
    if (!d.cert().convergent()) d = compose(BinOpKind::Sub, x.base(), y.base());

    if (d.cert().kind == CertKind::Vanishes) {
        v.kind = ComparisonVerdict::Kind::EqualCertified;
        v.difference = d;
        return v;
    }

    // verdicts available without scanning
    if (d.cert().apart && d.cert().apart->sign != 0) {
        const Apartness& ap = *d.cert().apart;
        return strict_verdict(ap.sign, ap.gap, ap.from, d);
    }
    if (d.cert().exact_limit && !d.cert().exact_limit->is_zero()) {
        auto ap = derive_apartness(d, 0);
        if (ap) return strict_verdict(ap->sign, ap->gap, ap->from, d);
    }

    // bracket-separation scan at doubling precisions
    for (Integer q = 1;; q *= 2) {
        bool last = q >= budget;
        Integer qq = last ? budget : q;
        Rational half(Integer(1), Integer(2) * qq);
        Index n = d.radius_index(half / 2);  // radius <= 1/(4q)
        Rational a = d.at(n);
        // every later value lies within [a - 1/(2q), a + 1/(2q)]
        if (a.abs() > half) return strict_verdict(a.sign(), a.abs() - half, n, d);
        if (last) break;
    }
    v.kind = ComparisonVerdict::Kind::Indistinguishable;
    v.budget = budget;
    v.difference = d;
    return v;
}

// ---------------------------------------------------------------------------
// Arithmetic

namespace {

MeasurableNumber combine_measurables(BinOpKind op, const MeasurableNumber& x,
                                     const MeasurableNumber& y) {
    return MeasurableNumber(compose(op, x.base(), y.base()));
}

}  // namespace

MeasurableNumber operator+(const MeasurableNumber& x, const MeasurableNumber& y) {
    return combine_measurables(BinOpKind::Add, x, y);
}

MeasurableNumber operator-(const MeasurableNumber& x, const MeasurableNumber& y) {
    return combine_measurables(BinOpKind::Sub, x, y);
}

MeasurableNumber operator*(const MeasurableNumber& x, const MeasurableNumber& y) {
    return combine_measurables(BinOpKind::Mul, x, y);
}

MeasurableNumber divide(const MeasurableNumber& x, const MeasurableNumber& y,
                        const Integer& budget) {
    ComparisonVerdict w = compare(y, MeasurableNumber::literal(Rational(0)), budget);
    if (w.kind != ComparisonVerdict::Kind::Less && w.kind != ComparisonVerdict::Kind::Greater)
        throw PreconditionError(
            "division requires an apartness-from-zero witness for the denominator; verdict: " +
            to_string(w.kind));
    CertifiedSequence denom = y.base();
    Certificate cert = denom.cert();
    if (!cert.apart) {
        int sign = w.kind == ComparisonVerdict::Kind::Greater ? 1 : -1;
        cert.apart = Apartness{sign, w.separation, w.separation_from};
        denom = CertifiedSequence(denom.sequence(), std::move(cert), denom.source(),
                                  denom.label());
    }
    return MeasurableNumber(compose(BinOpKind::Div, x.base(), denom));
}

}  // namespace bolzano
