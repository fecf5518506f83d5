#pragma once

// Executable completeness: limits of BC-sequences, greatest boundaries of
// monotone properties, intermediate values of continuous functions pinned
// between two variable quantities, and the neighbour form of completeness
// realized arithmetically.

#include "bolzano/measurable.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bolzano {

// ---------------------------------------------------------------------------
// Polynomials (exact coefficients) and continuity moduli

class Polynomial {
public:
    Polynomial() : coeffs_{Rational(0)} {}
    explicit Polynomial(std::vector<Rational> coeffs);
    // Accepts the formula grammar over one variable; division only by
    // constants, exponents fixed non-negative integers.
    static Polynomial parse(std::string_view text, const std::string& variable = "x");

    Rational operator()(const Rational& x) const;
    int degree() const { return int(coeffs_.size()) - 1; }
    const std::vector<Rational>& coefficients() const { return coeffs_; }

    Polynomial operator-(const Polynomial& o) const;
    bool is_zero() const;

    // Bound on |P'| over [lo, hi]: sum of i*|a_i|*M^(i-1).
    Rational slope_bound(const Rational& lo, const Rational& hi) const;

    std::string to_text(const std::string& variable = "x") const;

private:
    std::vector<Rational> coeffs_;  // coeffs_[i] multiplies x^i
};

// Exact evaluator plus a continuity modulus: |f(x+h) - f(x)| <= 1/q for
// |h| <= modulus(lo, hi, q) whenever x, x+h lie in [lo, hi].
struct ContinuousFunction {
    std::function<Rational(const Rational&)> eval;
    std::function<Rational(const Rational&, const Rational&, const Integer&)> modulus;
    std::optional<Polynomial> poly;

    static ContinuousFunction from_polynomial(Polynomial p);
    static ContinuousFunction constant(const Rational& c);
};

// ---------------------------------------------------------------------------
// BC-sequences and their limits

struct MeasurableSequence {
    // k >= 1
    std::function<MeasurableNumber(Index)> at;
    // K(q): |X_j - X_k| <= 1/q (as limits) for all j, k >= K(q); must be
    // non-decreasing in q.
    std::function<Index(const Integer&)> modulus;
    std::optional<Rational> declared_limit;
    std::optional<LimitAnchor> anchor;

    // X_k = k-th partial result of a certified convergent expression.
    static MeasurableSequence from_partial_results(const ExprPtr& series);
};

// Diagonal construction: returns L with |L - X_k| <= 1/q for k >= K(q).
MeasurableNumber bc_limit(const MeasurableSequence& xs);

// ---------------------------------------------------------------------------
// Greatest boundary (supremum by bisection)

enum class Tri { Holds, Fails, WithinTolerance };

struct BoundaryPredicate {
    // Three-valued query at tolerance tol.
    std::function<Tri(const Rational& x, const Rational& tol)> query;
    // Optional exact value f(x) with the convention: the property holds iff
    // f(x) < 0. Lets bisection detect an exactly rational boundary.
    std::function<std::optional<Rational>(const Rational&)> exact_value;
    Rational lower_witness;    // the property holds at and below this point
    Rational counter_witness;  // and fails here

    // Property P(x) < 0 for an exact polynomial P.
    static BoundaryPredicate from_polynomial(const Polynomial& p, const Rational& lower,
                                             const Rational& counter);
};

// Bisection maintaining "left end bounds the property from above, right end
// does not", emitted as a midpoint BC-sequence and finished by bc_limit.
// The result A satisfies query(A - 1/q) in {Holds, WithinTolerance} and
// query(A + 1/q) in {Fails, WithinTolerance}.
MeasurableNumber greatest_boundary(const BoundaryPredicate& pred, const Integer& q);

// ---------------------------------------------------------------------------
// Intermediate value

// Requires f(alpha) < g(alpha) and f(beta) > g(beta) exactly; returns r in
// [alpha, beta] with |f(r) - g(r)| <= 1/q.
MeasurableNumber intermediate_value(const ContinuousFunction& f, const ContinuousFunction& g,
                                    const Rational& alpha, const Rational& beta, const Integer& q);

// ---------------------------------------------------------------------------
// Between two variable quantities

enum class GapMode { BoundedBelow, Vanishing, VanishingAttained };

struct VariableQuantityPair {
    std::function<MeasurableNumber(Index)> lower;  // X, increasing
    std::function<MeasurableNumber(Index)> upper;  // Y, decreasing
    GapMode mode = GapMode::Vanishing;
    Rational gap_floor;                                  // BoundedBelow: Y - X > gap_floor
    std::function<Index(const Integer&)> gap_modulus;    // Vanishing: Y_k - X_k <= 1/q, k >= G(q)
    std::optional<MeasurableNumber> attained_extremum;   // VanishingAttained
    std::optional<Rational> declared_limit;
    std::optional<LimitAnchor> anchor;
};

struct BetweenResult {
    enum class Case { InfinitelyMany, ExactlyOne, None };

    Case kind;
    std::optional<MeasurableNumber> witness;   // InfinitelyMany, ExactlyOne
    std::optional<MeasurableNumber> second;    // InfinitelyMany: a' < a
    std::optional<MeasurableNumber> extremum;  // None
};

std::string to_string(BetweenResult::Case c);

BetweenResult between_sets(const VariableQuantityPair& pair, Index sample_depth = 32,
                           const Integer& budget = Integer(1000000));

// Builds the vanishing pair around a positive distance d (or the attained
// variant) and runs between_sets; the single witness is certified equal
// to d.
BetweenResult neighbour_realization(const MeasurableNumber& d, bool attained_maximum = false,
                                    const Integer& budget = Integer(1000000));

}  // namespace bolzano
