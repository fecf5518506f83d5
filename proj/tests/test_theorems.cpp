#include "bolzano/theorems.hpp"

#include <doctest.h>

#include <random>

using namespace bolzano;

namespace {

Rational rat(long long n, long long d = 1) { return Rational(Integer(n), Integer(d)); }

// independent oracle: plain interval bisection on exact rationals
Rational oracle_bisect(const Polynomial& p, Rational lo, Rational hi, int steps) {
    for (int i = 0; i < steps; ++i) {
        Rational m = (lo + hi) / rat(2);
        if (p(m).is_zero()) return m;
        if (p(m).is_negative()) lo = m;
        else hi = m;
    }
    return (lo + hi) / rat(2);
}

bool certified_equal(const MeasurableNumber& a, const MeasurableNumber& b) {
    return eq(a, b).kind == ComparisonVerdict::Kind::EqualCertified;
}

}  // namespace

TEST_CASE("polynomials evaluate exactly and expose slope bounds") {
    Polynomial p = Polynomial::parse("x^3 - x - 1");
    CHECK(p(rat(2)) == rat(5));
    CHECK(p(rat(1, 2)) == rat(-11, 8));
    CHECK(p.degree() == 3);
    // |p'| = |3x^2 - 1| <= 3*4 + 1 on [-2, 2]
    CHECK(p.slope_bound(rat(-2), rat(2)) >= rat(11));
    CHECK_THROWS_AS(Polynomial::parse("2^x"), DomainError);
    CHECK(Polynomial::parse("(x - 1) * (x + 1)")(rat(3)) == rat(8));
}

TEST_CASE("the continuity modulus of a polynomial is sampling-checkable") {
    ContinuousFunction f = ContinuousFunction::from_polynomial(Polynomial::parse("x^2 - 2"));
    std::mt19937_64 rng(5150);
    std::uniform_int_distribution<long long> num(-200, 200);
    for (Integer q : {Integer(10), Integer(1000)}) {
        Rational delta = f.modulus(rat(-2), rat(2), q);
        REQUIRE(delta.is_positive());
        for (int i = 0; i < 60; ++i) {
            Rational x = rat(num(rng), 100);
            Rational h = delta * rat(std::uniform_int_distribution<long long>(1, 99)(rng), 100);
            if (x + h > rat(2)) continue;
            CHECK((f.eval(x + h) - f.eval(x)).abs() <= Rational(Integer(1), q));
        }
    }
}

TEST_CASE("bc_limit of partial geometric sums is certified equal to 1") {
    MeasurableSequence xs = MeasurableSequence::from_partial_results(
        parse_expression("sum(n, 1/2^n)"));
    MeasurableNumber l = bc_limit(xs);
    CHECK(certified_equal(l, MeasurableNumber::literal(rat(1))));
    // bracket containment: the enclosure of L at q contains the enclosures
    // of X_k at 3q for all sampled k >= K(3q)
    for (Integer q : {Integer(2), Integer(10), Integer(100)}) {
        auto [llo, lhi] = l.enclosure(q);
        Index k0 = xs.modulus(Integer(3) * q);
        for (Index k : {k0, k0 + 1, k0 + 5}) {
            auto [xlo, xhi] = xs.at(k).enclosure(Integer(3) * q);
            CHECK(llo <= xlo);
            CHECK(xhi <= lhi);
        }
    }
}

TEST_CASE("bc_limit of a constant sequence returns the constant") {
    MeasurableSequence xs;
    xs.at = [](Index) { return MeasurableNumber::literal(rat(5, 7)); };
    xs.modulus = [](const Integer&) { return Index(1); };
    MeasurableNumber l = bc_limit(xs);
    // idempotence: |L - 5/7| <= radius, and the verdicts converge
    ComparisonVerdict v = eq(l, MeasurableNumber::literal(rat(5, 7)));
    CHECK(v.kind != ComparisonVerdict::Kind::Less);
    CHECK(v.kind != ComparisonVerdict::Kind::Greater);
    Rational a = l.approx(rat(1, 1000000));
    CHECK((a - rat(5, 7)).abs() <= rat(1, 1000000));
}

TEST_CASE("eq verdicts between the limit and the sequence tail converge") {
    MeasurableSequence xs = MeasurableSequence::from_partial_results(
        parse_expression("sum(n, 1/2^n)"));
    MeasurableNumber l = bc_limit(xs);
    for (Integer q : {Integer(4), Integer(64), Integer(1024)}) {
        Index k = xs.modulus(q);
        MeasurableNumber d = l - xs.at(k);
        // |L - X_k| < 1/q: both strict order checks succeed
        CHECK(compare(d, MeasurableNumber::literal(Rational(Integer(1), q))).kind ==
              ComparisonVerdict::Kind::Less);
        CHECK(compare(d, MeasurableNumber::literal(-Rational(Integer(1), q))).kind ==
              ComparisonVerdict::Kind::Greater);
    }
}

TEST_CASE("greatest boundary: X^2 < 2 lands on the square root of 2") {
    Polynomial p = Polynomial::parse("x^2 - 2");
    BoundaryPredicate pred = BoundaryPredicate::from_polynomial(p, rat(1), rat(2));
    Integer q(1000000);
    MeasurableNumber a = greatest_boundary(pred, q);
    Rational v = a.approx(Rational(Integer(1), q));
    // |A^2 - 2| <= 4/q at q = 10^6
    CHECK((v * v - rat(2)).abs() <= rat(4, 1000000));
    // agreement with the plain-bisection oracle
    Rational ref = oracle_bisect(p, rat(1), rat(2), 60);
    CHECK((v - ref).abs() <= rat(2, 1000000));
    // the three-valued postcondition at 1/q
    Rational tol(Integer(1), q);
    CHECK(p(v - tol) < tol);        // not Fails just left of A
    CHECK(p(v + tol) > -tol);       // not Holds just right of A
}

TEST_CASE("greatest boundary: rational cut points are found exactly") {
    // X < 3/4 on [0, 1]: the boundary is the cut point itself
    Polynomial cut = Polynomial::parse("x - 3/4");
    MeasurableNumber a = greatest_boundary(BoundaryPredicate::from_polynomial(cut, rat(0), rat(1)),
                                           Integer(1000));
    CHECK(certified_equal(a, MeasurableNumber::literal(rat(3, 4))));
    // X^2 < 4 on [1, 3]
    Polynomial sq = Polynomial::parse("x^2 - 4");
    MeasurableNumber two = greatest_boundary(BoundaryPredicate::from_polynomial(sq, rat(1), rat(3)),
                                             Integer(1000));
    CHECK(certified_equal(two, MeasurableNumber::literal(rat(2))));
}

TEST_CASE("greatest boundary through the three-valued query alone") {
    // no exact hook: the predicate answers WithinTolerance near the cut
    Polynomial cut = Polynomial::parse("x - 2/5");
    BoundaryPredicate pred;
    pred.query = [cut](const Rational& x, const Rational& tol) {
        Rational v = cut(x);
        if (v <= -tol) return Tri::Holds;
        if (v >= tol) return Tri::Fails;
        return Tri::WithinTolerance;
    };
    pred.lower_witness = rat(0);
    pred.counter_witness = rat(1);
    Integer q(100000);
    MeasurableNumber a = greatest_boundary(pred, q);
    Rational v = a.approx(Rational(Integer(1), q));
    CHECK((v - rat(2, 5)).abs() <= rat(1, 1000));
}

TEST_CASE("greatest boundary rejects bad witnesses and inconsistent predicates") {
    Polynomial p = Polynomial::parse("x^2 - 2");
    CHECK_THROWS_AS(
        greatest_boundary(BoundaryPredicate::from_polynomial(p, rat(3), rat(4)), Integer(10)),
        PreconditionError);  // property already fails at the lower witness
    CHECK_THROWS_AS(
        greatest_boundary(BoundaryPredicate::from_polynomial(p, rat(0), rat(1)), Integer(10)),
        PreconditionError);  // property still holds at the counter-witness

    // a non-monotone three-valued predicate is caught while bisecting
    BoundaryPredicate trap;
    trap.query = [](const Rational& x, const Rational&) {
        // claims Fails low and Holds high: no boundary structure
        return x < rat(1, 2) ? Tri::Fails : Tri::Holds;
    };
    trap.lower_witness = rat(0);
    trap.counter_witness = rat(1);
    CHECK_THROWS_AS(greatest_boundary(trap, Integer(64)), PreconditionError);
}

TEST_CASE("intermediate value: x^2 = 2 on [1, 2]") {
    ContinuousFunction f = ContinuousFunction::from_polynomial(Polynomial::parse("x^2 - 2"));
    ContinuousFunction zero = ContinuousFunction::constant(rat(0));
    Integer q(1000000);
    MeasurableNumber r = intermediate_value(f, zero, rat(1), rat(2), q);
    Rational v = r.approx(rat(1, 10000000));
    CHECK((v * v - rat(2)).abs() <= rat(4, 1000000));
    Rational ref = oracle_bisect(Polynomial::parse("x^2 - 2"), rat(1), rat(2), 60);
    CHECK((v - ref).abs() <= rat(2, 1000000));
    // the returned number stays inside [alpha, beta]
    CHECK(v >= rat(1));
    CHECK(v <= rat(2));
}

TEST_CASE("intermediate value: odd symmetry finds zero exactly") {
    ContinuousFunction f = ContinuousFunction::from_polynomial(Polynomial::parse("x"));
    MeasurableNumber r =
        intermediate_value(f, ContinuousFunction::constant(rat(0)), rat(-1), rat(1), Integer(100));
    CHECK(certified_equal(r, MeasurableNumber::literal(rat(0))));
}

TEST_CASE("intermediate value: the classic cubic") {
    Polynomial p = Polynomial::parse("x^3 - x - 1");
    ContinuousFunction f = ContinuousFunction::from_polynomial(p);
    Integer q(1000000);
    MeasurableNumber r =
        intermediate_value(f, ContinuousFunction::constant(rat(0)), rat(1), rat(2), q);
    Rational v = r.approx(rat(1, 10000000));
    Rational ref = oracle_bisect(p, rat(1), rat(2), 60);  // 1.3247...
    CHECK((v - ref).abs() <= rat(2, 1000000));
    CHECK(p(v).abs() <= rat(1, 1000000));
}

TEST_CASE("intermediate value enforces its hypotheses") {
    ContinuousFunction f = ContinuousFunction::from_polynomial(Polynomial::parse("x^2 - 2"));
    ContinuousFunction zero = ContinuousFunction::constant(rat(0));
    CHECK_THROWS_AS(intermediate_value(f, zero, rat(2), rat(3), Integer(10)), PreconditionError);
    CHECK_THROWS_AS(intermediate_value(f, zero, rat(2), rat(1), Integer(10)), PreconditionError);
}

TEST_CASE("between two quantities: bounded gap yields infinitely many") {
    VariableQuantityPair pair;
    pair.lower = [](Index k) { return MeasurableNumber::literal(rat(-1, k)); };
    pair.upper = [](Index k) { return MeasurableNumber::literal(rat(1) + rat(1, k)); };
    pair.mode = GapMode::BoundedBelow;
    pair.gap_floor = rat(1);
    BetweenResult r = between_sets(pair);
    REQUIRE(r.kind == BetweenResult::Case::InfinitelyMany);
    REQUIRE(r.witness.has_value());
    REQUIRE(r.second.has_value());
    // two distinct witnesses, both strictly between sampled elements
    CHECK(compare(*r.second, *r.witness).kind == ComparisonVerdict::Kind::Less);
    for (Index k : {Index(1), Index(5), Index(40)}) {
        CHECK(compare(pair.lower(k), *r.second).kind == ComparisonVerdict::Kind::Less);
        CHECK(compare(*r.witness, pair.upper(k)).kind == ComparisonVerdict::Kind::Less);
    }
    // iterated midpoints stay between and pairwise distinct
    MeasurableNumber lo = *r.second, hi = *r.witness;
    MeasurableNumber prev = lo;
    for (int i = 0; i < 20; ++i) {
        MeasurableNumber mid = (prev + hi) * MeasurableNumber::literal(rat(1, 2));
        CHECK(compare(prev, mid).kind == ComparisonVerdict::Kind::Less);
        CHECK(compare(mid, hi).kind == ComparisonVerdict::Kind::Less);
        prev = mid;
    }
}

TEST_CASE("between two quantities: vanishing gap pins exactly one number") {
    BetweenResult r = neighbour_realization(MeasurableNumber::literal(rat(1, 3)));
    REQUIRE(r.kind == BetweenResult::Case::ExactlyOne);
    CHECK(certified_equal(*r.witness, MeasurableNumber::literal(rat(1, 3))));
}

TEST_CASE("between two quantities: an attained extremum leaves no number") {
    BetweenResult r = neighbour_realization(MeasurableNumber::literal(rat(1, 3)), true);
    REQUIRE(r.kind == BetweenResult::Case::None);
    REQUIRE(r.extremum.has_value());
    CHECK(certified_equal(*r.extremum, MeasurableNumber::literal(rat(1, 3))));
}

TEST_CASE("neighbour realization works at measurable distances like sqrt 2") {
    Polynomial p = Polynomial::parse("x^2 - 2");
    MeasurableNumber root = greatest_boundary(BoundaryPredicate::from_polynomial(p, rat(1), rat(2)),
                                              Integer(100000));
    BetweenResult r = neighbour_realization(root);
    REQUIRE(r.kind == BetweenResult::Case::ExactlyOne);
    CHECK(certified_equal(*r.witness, root));
    Rational v = r.witness->approx(rat(1, 1000000));
    CHECK((v * v - rat(2)).abs() <= rat(4, 100000));
}

TEST_CASE("the pair ordering is validated before anything runs") {
    VariableQuantityPair bad;
    bad.lower = [](Index) { return MeasurableNumber::literal(rat(2)); };
    bad.upper = [](Index) { return MeasurableNumber::literal(rat(1)); };
    bad.mode = GapMode::BoundedBelow;
    bad.gap_floor = rat(1);
    CHECK_THROWS_AS(between_sets(bad), PreconditionError);
}
