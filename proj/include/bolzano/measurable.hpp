#pragma once

// Measurable numbers: certified convergent sequences with measuring
// fractions, classification, and comparison up to infinitesimals. Equality
// is a semi-decision: EqualCertified only with a derivable vanishing
// modulus for the difference, strict verdicts only with an exact rational
// separation, and otherwise an explicit at-budget answer.

#include "bolzano/sequence.hpp"

#include <optional>
#include <string>
#include <utility>

namespace bolzano {

// For denominator q: the integer p with (p-1)/q <= S_n <= (p+1)/q for all
// n >= from_index (the corrected two-sided bracket).
struct MeasuringFraction {
    Integer q;
    Integer p;
    Index from_index = 1;

    Rational lower() const { return Rational(p - 1, q); }
    Rational upper() const { return Rational(p + 1, q); }
    Rational center() const { return Rational(p, q); }
};

struct Classification {
    enum class Kind {
        Measurable,
        InfinitelySmallPositive,
        InfinitelySmallNegative,
        InfinitelyGreatPositive,
        InfinitelyGreatNegative,
        UndeterminedAtFuel,
    };

    Kind kind = Kind::UndeterminedAtFuel;
    std::string rule;
    Index fuel = 0;      // UndeterminedAtFuel only
    std::string trend;   // advisory scan summary, UndeterminedAtFuel only
};

std::string to_string(Classification::Kind k);

// Certified classifications are final; UndeterminedAtFuel only ever arises
// from Uncertified sequences (decided by an empirical scan up to fuel).
Classification classify(const CertifiedSequence& s, Index fuel = 10000);

class MeasurableNumber {
public:
    // Requires a Cauchy or Vanishes certificate.
    explicit MeasurableNumber(CertifiedSequence base);

    static MeasurableNumber literal(const Rational& v);
    static MeasurableNumber from_expression(const ExprPtr& e);
    static MeasurableNumber from_text(std::string_view text);

    const CertifiedSequence& base() const { return base_; }
    std::shared_ptr<const void> core() const { return base_.core(); }

    MeasuringFraction measuring_fraction(const Integer& q) const;
    // A rational within eps of the number.
    Rational approx(const Rational& eps) const;
    // [a - 1/q, a + 1/q] with a within 1/(8q); encloses the number.
    std::pair<Rational, Rational> enclosure(const Integer& q) const;

private:
    CertifiedSequence base_;
};

struct ComparisonVerdict {
    enum class Kind { Less, Greater, EqualCertified, Indistinguishable };

    Kind kind;
    // Less/Greater: verified strict separation >= 1/witness_q of the
    // difference from zero, holding from separation_from on.
    Integer witness_q;
    Rational separation;
    Index separation_from = 1;
    // EqualCertified: the difference sequence with its vanishing modulus.
    std::optional<CertifiedSequence> difference;
    // Indistinguishable: the exhausted budget.
    Integer budget;
};

std::string to_string(ComparisonVerdict::Kind k);

// Shared engine: certifies the difference (ring-normalized when both sides
// are expression-backed), tries a vanishing modulus, then scans doubling
// precisions up to budget for a strict bracket separation. Never returns a
// false verdict.
ComparisonVerdict compare(const MeasurableNumber& x, const MeasurableNumber& y,
                          const Integer& budget = Integer(1000000));

// A = B iff |A - B| is infinitely small.
inline ComparisonVerdict eq(const MeasurableNumber& x, const MeasurableNumber& y,
                            const Integer& budget = Integer(1000000)) {
    return compare(x, y, budget);
}

// A > B iff A - B is positive and not infinitely small.
inline ComparisonVerdict order(const MeasurableNumber& x, const MeasurableNumber& y,
                               const Integer& budget = Integer(1000000)) {
    return compare(x, y, budget);
}

MeasurableNumber operator+(const MeasurableNumber& x, const MeasurableNumber& y);
MeasurableNumber operator-(const MeasurableNumber& x, const MeasurableNumber& y);
MeasurableNumber operator*(const MeasurableNumber& x, const MeasurableNumber& y);

// Requires an apartness witness for y: order(y, 0) must decide Less or
// Greater within the budget, else PreconditionError.
MeasurableNumber divide(const MeasurableNumber& x, const MeasurableNumber& y,
                        const Integer& budget = Integer(1000000));

}  // namespace bolzano
