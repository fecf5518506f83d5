#include "bolzano/measurable.hpp"

#include "bolzano/audit.hpp"

#include <doctest.h>

#include <random>
#include <vector>

using namespace bolzano;

namespace {

Rational rat(long long n, long long d = 1) { return Rational(Integer(n), Integer(d)); }

MeasurableNumber M(const std::string& text) { return MeasurableNumber::from_text(text); }

void check_bracket(const MeasurableNumber& x, const Integer& q) {
    MeasuringFraction f = x.measuring_fraction(q);
    auto failure = audit::check_fraction(x.base(), f.q, f.p, f.from_index);
    CHECK_MESSAGE(!failure.has_value(), failure.value_or(""));
}

}  // namespace

TEST_CASE("measuring fractions: the corrected bracket around B") {
    MeasurableNumber b = M("sum(n, (-1)^(n+1)/2^n)");
    MeasuringFraction f3 = b.measuring_fraction(3);
    CHECK(f3.p == 1);  // bracket [0, 2/3] around 1/3
    CHECK(f3.lower() == rat(0));
    CHECK(f3.upper() == rat(2, 3));
    // the partial results oscillate around 1/3, so the corrected two-sided
    // bracket must hold at the troublesome q = 3n denominators too
    for (Integer q : {Integer(3), Integer(6), Integer(30), Integer(99)}) check_bracket(b, q);
}

TEST_CASE("measuring fractions: D sits at p = 3q for every q") {
    MeasurableNumber d = M("3 + 5/sum(n, 1)");
    for (Integer q : {Integer(1), Integer(7), Integer(100), Integer(12345)}) {
        MeasuringFraction f = d.measuring_fraction(q);
        CHECK(f.p == Integer(3) * q);
        check_bracket(d, q);
    }
}

TEST_CASE("measuring fractions: zero has p = 0") {
    MeasurableNumber z = M("0");
    MeasuringFraction f = z.measuring_fraction(7);
    CHECK(f.p == 0);
    CHECK(f.q == 7);
}

TEST_CASE("measure centers at different q agree within 1/q + 1/q'") {
    std::vector<MeasurableNumber> corpus{M("sum(n, (-1)^(n+1)/2^n)"), M("prod(n, 1 - 1/2^n)"),
                                         M("3 + 5/sum(n, 1)"), M("-5/7")};
    std::vector<Integer> qs{1, 2, 3, 10, 97, 1000};
    for (const MeasurableNumber& x : corpus) {
        for (const Integer& qa : qs) {
            for (const Integer& qb : qs) {
                Rational ca = x.measuring_fraction(qa).center();
                Rational cb = x.measuring_fraction(qb).center();
                CHECK((ca - cb).abs() <= Rational(Integer(1), qa) + Rational(Integer(1), qb));
            }
        }
    }
}

TEST_CASE("classification of the classic kinds") {
    CHECK(classify(certify(parse_expression("sum(n, n)"))).kind ==
          Classification::Kind::InfinitelyGreatPositive);
    CHECK(classify(certify(parse_expression("5/sum(n, 1)"))).kind ==
          Classification::Kind::InfinitelySmallPositive);
    CHECK(classify(certify(parse_expression("0 - 5/sum(n, 1)"))).kind ==
          Classification::Kind::InfinitelySmallNegative);
    CHECK(classify(certify(parse_expression("sum(n, 0 - n)"))).kind ==
          Classification::Kind::InfinitelyGreatNegative);
    // the product converges to about 0.2888 > 0: measurable, not small
    Classification c = classify(certify(parse_expression("prod(n, 1 - 1/2^n)")));
    CHECK(c.kind == Classification::Kind::Measurable);
    // plain zero is measurable, not signed-small
    CHECK(classify(certify(parse_expression("0"))).kind == Classification::Kind::Measurable);
}

TEST_CASE("uncertified shapes report a scan, never a guess") {
    Classification h = classify(certify(parse_expression("sum(n, 1/n)")), 512);
    CHECK(h.kind == Classification::Kind::UndeterminedAtFuel);
    CHECK(h.fuel == 512);
    CHECK(!h.trend.empty());
}

TEST_CASE("equality is certified through vanishing differences") {
    // the monad of zero
    CHECK(eq(M("1/sum(n, 1)"), M("1/sum(n, 3)")).kind ==
          ComparisonVerdict::Kind::EqualCertified);
    CHECK(eq(M("1/sum(n, 1)"), M("0")).kind == ComparisonVerdict::Kind::EqualCertified);
    // absorption of an infinitesimal into D
    CHECK(eq(M("3 + 5/sum(n, 1)"), M("3")).kind == ComparisonVerdict::Kind::EqualCertified);
    // the geometric sum itself
    CHECK(eq(M("sum(n, (-1)^(n+1)/2^n)"), M("1/3")).kind ==
          ComparisonVerdict::Kind::EqualCertified);
    // and the vanishing modulus it returns is sound
    ComparisonVerdict v = eq(M("sum(n, (-1)^(n+1)/2^n)"), M("1/3"));
    REQUIRE(v.difference.has_value());
    auto failure = audit::check_certificate(
        *v.difference, {Integer(1), Integer(2), Integer(10), Integer(100), Integer(1000)});
    CHECK_MESSAGE(!failure.has_value(), failure.value_or(""));
}

TEST_CASE("order verdicts carry exact separations") {
    ComparisonVerdict v = order(M("1/3"), M("1/2"));
    CHECK(v.kind == ComparisonVerdict::Kind::Less);
    CHECK(v.separation >= Rational(Integer(1), v.witness_q));
    CHECK(v.separation == rat(1, 6));

    ComparisonVerdict w = order(M("sum(n, (-1)^(n+1)/2^n)"), M("1/2"));
    CHECK(w.kind == ComparisonVerdict::Kind::Less);
    CHECK(w.separation.is_positive());

    // reflexivity never yields a strict verdict
    MeasurableNumber x = M("sum(n, (-1)^(n+1)/2^n)");
    CHECK(order(x, x).kind == ComparisonVerdict::Kind::EqualCertified);
    CHECK(order(M("prod(n, 1 - 1/2^n)"), M("prod(n, 1 - 1/2^n)")).kind ==
          ComparisonVerdict::Kind::EqualCertified);
}

TEST_CASE("indistinguishable outcomes exhaust the stated budget") {
    // ln 2 = 0.6931...; 9/13 = 0.6923...: separated only past q ~ 1200
    MeasurableNumber l = M("sum(n, (-1)^(n+1)/n)");
    ComparisonVerdict coarse = compare(l, M("9/13"), 16);
    CHECK(coarse.kind == ComparisonVerdict::Kind::Indistinguishable);
    CHECK(coarse.budget == 16);
    ComparisonVerdict fine = compare(l, M("9/13"), 100000);
    CHECK(fine.kind == ComparisonVerdict::Kind::Greater);
}

TEST_CASE("arithmetic closes over measurable numbers") {
    MeasurableNumber b = M("sum(n, (-1)^(n+1)/2^n)");
    CHECK(eq(b + b, M("2/3")).kind == ComparisonVerdict::Kind::EqualCertified);
    CHECK(eq(b * M("3"), M("1")).kind == ComparisonVerdict::Kind::EqualCertified);
    CHECK(eq(b - b, M("0")).kind == ComparisonVerdict::Kind::EqualCertified);
    // x + 0 = x
    CHECK(eq(b + M("0"), b).kind == ComparisonVerdict::Kind::EqualCertified);
    // an infinitely small summand is absorbed
    CHECK(eq(b + M("1/sum(n, 1)"), b).kind == ComparisonVerdict::Kind::EqualCertified);
    // the product of an infinitely small and a measurable number is small
    CHECK(eq(M("1/sum(n, 1)") * M("1/2"), M("0")).kind ==
          ComparisonVerdict::Kind::EqualCertified);
}

TEST_CASE("division demands an apartness witness") {
    MeasurableNumber b = M("sum(n, (-1)^(n+1)/2^n)");
    MeasurableNumber r = divide(M("1"), b);
    CHECK(eq(r, M("3")).kind == ComparisonVerdict::Kind::EqualCertified);
    // dividing by a member of the zero monad is rejected
    CHECK_THROWS_AS(divide(M("1"), M("1/sum(n, 1)")), PreconditionError);
    CHECK_THROWS_AS(divide(M("1"), M("0")), PreconditionError);
}

TEST_CASE("order structure on a randomized rational corpus") {
    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<long long> num(-60, 60);
    std::uniform_int_distribution<long long> den(1, 24);
    auto random_rat = [&] { return rat(num(rng), den(rng)); };
    for (int i = 0; i < 120; ++i) {
        Rational a = random_rat(), b = random_rat(), c = random_rat();
        MeasurableNumber x = MeasurableNumber::literal(a);
        MeasurableNumber y = MeasurableNumber::literal(b);
        MeasurableNumber z = MeasurableNumber::literal(c);
        // trichotomy is exact on rational inputs
        ComparisonVerdict v = compare(x, y);
        if (a < b) CHECK(v.kind == ComparisonVerdict::Kind::Less);
        if (a == b) CHECK(v.kind == ComparisonVerdict::Kind::EqualCertified);
        if (a > b) CHECK(v.kind == ComparisonVerdict::Kind::Greater);
        // compatibility with addition
        if (v.kind == ComparisonVerdict::Kind::Less)
            CHECK(compare(x + z, y + z).kind == ComparisonVerdict::Kind::Less);
    }
}

TEST_CASE("every emitted fraction passes the exact bracket audit") {
    std::vector<std::pair<CertifiedSequence, MeasuringFraction>> emitted;
    audit::set_fraction_sink([&](const CertifiedSequence& cs, const Integer& q, const Integer& p,
                                 Index from) {
        emitted.push_back({cs, MeasuringFraction{q, p, from}});
    });
    MeasurableNumber b = M("sum(n, (-1)^(n+1)/2^n)");
    for (Integer q = 1; q <= 24; ++q) b.measuring_fraction(q);
    audit::clear_sinks();
    CHECK(emitted.size() == 24);
    for (const auto& [cs, f] : emitted) {
        auto failure = audit::check_fraction(cs, f.q, f.p, f.from_index);
        CHECK_MESSAGE(!failure.has_value(), failure.value_or(""));
    }
}
