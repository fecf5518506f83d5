#include "bolzano/topology.hpp"

#include "bolzano/presets.hpp"

#include <doctest.h>

#include <random>

using namespace bolzano;

namespace {

Rational rat(long long n, long long d = 1) { return Rational(Integer(n), Integer(d)); }

PointSet1D unit_continuum() {
    PointSet1D s;
    s.pieces.push_back({rat(0), rat(1), true, true, Carrier::Continuum});
    return s;
}

}  // namespace

TEST_CASE("membership by carrier") {
    PointSet1D s = unit_continuum();
    CHECK(contains(s, rat(1, 2)));
    CHECK(contains(s, rat(0)));
    CHECK(!contains(s, rat(3, 2)));

    PointSet1D dy = topo_preset("dyadic");
    CHECK(contains(dy, rat(3, 8)));
    CHECK(!contains(dy, rat(1, 3)));
    CHECK(is_dyadic(rat(5, 16)));
    CHECK(!is_dyadic(rat(1, 6)));

    // open ends are excluded
    PointSet1D half;
    half.pieces.push_back({rat(0), rat(1), true, false, Carrier::Continuum});
    CHECK(!contains(half, rat(1)));
}

TEST_CASE("membership with an excluded geometric family") {
    PointSet1D s = topo_preset("pu41-without-z");
    // the midpoints 1 - 1/2^n are omitted
    CHECK(!contains(s, rat(1, 2)));
    CHECK(!contains(s, rat(3, 4)));
    CHECK(!contains(s, rat(1023, 1024)));
    CHECK(!contains(s, rat(1)));  // z itself omitted
    CHECK(contains(s, rat(2, 3)));
    CHECK(contains(s, rat(0)));

    PointSet1D with_z = topo_preset("pu41-with-z");
    CHECK(contains(with_z, rat(1)));
    CHECK(!contains(with_z, rat(3, 4)));
}

TEST_CASE("family point indices solve exactly") {
    GeometricFamily f;
    f.accumulation = rat(1);
    f.scale = rat(1);
    f.ratio = rat(1, 2);
    f.side = FamilySide::Left;
    CHECK(f.point(1) == rat(1, 2));
    CHECK(f.point(10) == rat(1023, 1024));
    CHECK(f.index_of(rat(1, 2)) == 1);
    CHECK(f.index_of(rat(1023, 1024)) == 10);
    CHECK(!f.index_of(rat(2, 3)).has_value());
    CHECK(!f.index_of(rat(1)).has_value());
}

TEST_CASE("neighbour queries") {
    PointSet1D s = unit_continuum();
    CHECK(has_neighbour_at(s, rat(0), rat(1, 2)));
    CHECK_THROWS_AS(has_neighbour_at(s, rat(5), rat(1, 2)), DomainError);

    PointSet1D dy = topo_preset("dyadic");
    CHECK(!has_neighbour_at(dy, rat(1, 2), rat(1, 3)));  // 1/6 and 5/6 are not dyadic
    CHECK(has_neighbour_at(dy, rat(1, 2), rat(1, 4)));

    PointSet1D with_z = topo_preset("pu41-with-z");
    for (Index n = 1; n <= 8; ++n) {
        Rational h = rat(1) / rat(2).pow(Integer(n));
        CHECK(!has_neighbour_at(with_z, rat(1), h));
    }
    CHECK(has_neighbour_at(with_z, rat(1), rat(1, 3)));
}

TEST_CASE("point classification") {
    PointSet1D s = unit_continuum();
    s.isolated.push_back(rat(2));
    CHECK(classify_point(s, rat(1, 2)) == PointClass::Interior);
    CHECK(classify_point(s, rat(0)) == PointClass::Boundary);
    CHECK(classify_point(s, rat(2)) == PointClass::Isolated);
    CHECK_THROWS_AS(classify_point(s, rat(3)), DomainError);
}

TEST_CASE("completeness of the full interval survives randomized probing") {
    PointSet1D s = unit_continuum();
    CompletenessVerdict v = bolzano_complete(s);
    CHECK(v.complete);
    std::mt19937_64 rng(13579);
    std::uniform_int_distribution<long long> num(0, 1 << 20);
    std::uniform_int_distribution<long long> hnum(1, 999);
    for (int i = 0; i < 200; ++i) {
        Rational x = rat(num(rng), 1 << 20);
        if (!contains(s, x)) continue;
        Rational t = completeness_threshold(s, x);
        REQUIRE(t.is_positive());
        for (int j = 0; j < 200; ++j) {
            Rational h = t * rat(hnum(rng), 1000);
            CHECK(has_neighbour_at(s, x, h));
        }
    }
}

TEST_CASE("the punctured line without z still deserves the name a line") {
    PointSet1D s = topo_preset("pu41-without-z");
    CompletenessVerdict v = bolzano_complete(s);
    CHECK(v.complete);
    // probe both generic points and points squeezed between omitted midpoints
    std::mt19937_64 rng(8642);
    std::uniform_int_distribution<long long> hnum(1, 999);
    std::vector<Rational> probes{rat(0),        rat(2, 3),      rat(7, 10),
                                 rat(787, 1024), rat(100, 129), rat(511, 513)};
    for (const Rational& x : probes) {
        REQUIRE(contains(s, x));
        Rational t = completeness_threshold(s, x);
        REQUIRE(t.is_positive());
        for (int j = 0; j < 200; ++j) {
            Rational h = t * rat(hnum(rng), 1000);
            CHECK(has_neighbour_at(s, x, h));
        }
    }
}

TEST_CASE("including z breaks completeness exactly at z") {
    PointSet1D s = topo_preset("pu41-with-z");
    CompletenessVerdict v = bolzano_complete(s);
    REQUIRE(!v.complete);
    CHECK(v.point == rat(1));
    REQUIRE(v.sample_gaps.size() >= 3);
    for (const Rational& h : v.sample_gaps) CHECK(!has_neighbour_at(s, v.point, h));
    // the symbolic gap distances are exactly (z - a)/2^n
    REQUIRE(v.gap_at);
    for (Index n = 1; n <= 10; ++n) CHECK(v.gap_at(n) == rat(1) / rat(2).pow(Integer(n)));
}

TEST_CASE("the dyadic set is dense yet fails everywhere") {
    PointSet1D s = topo_preset("dyadic");
    // density: the midpoint of two dyadic points is dyadic and in the set
    std::mt19937_64 rng(1122);
    std::uniform_int_distribution<long long> num(0, 255);
    for (int i = 0; i < 100; ++i) {
        Rational a = rat(num(rng), 256), b = rat(num(rng), 256);
        Rational m = (a + b) / rat(2);
        CHECK(contains(s, m));
    }
    // yet no point has neighbours at every small distance
    CompletenessVerdict v = bolzano_complete(s);
    REQUIRE(!v.complete);
    CHECK(v.point == rat(0));
    REQUIRE(v.sample_gaps.size() >= 3);
    CHECK(v.sample_gaps[0] == rat(1, 3));
    CHECK(v.sample_gaps[1] == rat(1, 5));
    CHECK(v.sample_gaps[2] == rat(1, 7));
    for (const Rational& h : v.sample_gaps) CHECK(!has_neighbour_at(s, v.point, h));
}

TEST_CASE("an isolated point breaks completeness") {
    PointSet1D s = unit_continuum();
    s.isolated.push_back(rat(2));
    CompletenessVerdict v = bolzano_complete(s);
    REQUIRE(!v.complete);
    CHECK(v.point == rat(2));
    for (const Rational& h : v.sample_gaps) CHECK(!has_neighbour_at(s, v.point, h));
}

TEST_CASE("removing a family never breaks completeness away from its accumulation point") {
    // same construction, accumulation point in the middle of the piece
    PointSet1D s;
    s.pieces.push_back({rat(0), rat(2), true, true, Carrier::Continuum});
    GeometricFamily f;
    f.accumulation = rat(1);
    f.scale = rat(1);
    f.ratio = rat(1, 2);
    f.side = FamilySide::Left;
    s.excluded.push_back(f);
    CompletenessVerdict v = bolzano_complete(s);
    CHECK(v.complete);  // the right side always supplies a neighbour at c
    for (const Rational& x : {rat(0), rat(2, 3), rat(1), rat(3, 2), rat(2)}) {
        REQUIRE(contains(s, x));
        CHECK(completeness_threshold(s, x).is_positive());
    }
}

TEST_CASE("two-sided families at one point: coincidence analysis decides") {
    // same ratio both sides: every distance 1/2^n is blocked on both sides
    PointSet1D s;
    s.pieces.push_back({rat(-1), rat(1), true, true, Carrier::Continuum});
    GeometricFamily left;
    left.accumulation = rat(0);
    left.scale = rat(1);
    left.ratio = rat(1, 2);
    left.side = FamilySide::Left;
    GeometricFamily right = left;
    right.side = FamilySide::Right;
    s.excluded = {left, right};
    CompletenessVerdict v = bolzano_complete(s);
    REQUIRE(!v.complete);
    CHECK(v.point == rat(0));
    for (const Rational& h : v.sample_gaps) CHECK(!has_neighbour_at(s, v.point, h));

    // multiplicatively independent ratios never coincide: complete
    PointSet1D t = s;
    t.excluded[1].ratio = rat(1, 3);
    CompletenessVerdict w = bolzano_complete(t);
    CHECK(w.complete);
    CHECK(completeness_threshold(t, rat(0)).is_positive());
}

TEST_CASE("rationals carrier behaves like the continuum for the criterion") {
    PointSet1D s;
    s.pieces.push_back({rat(0), rat(1), true, true, Carrier::Rationals});
    CompletenessVerdict v = bolzano_complete(s);
    CHECK(v.complete);
    CHECK(classify_point(s, rat(1, 2)) == PointClass::Interior);
}

TEST_CASE("validation rejects malformed descriptions") {
    PointSet1D s;
    s.pieces.push_back({rat(1), rat(0), true, true, Carrier::Continuum});
    CHECK_THROWS_AS(s.validate(), DomainError);
    PointSet1D t = unit_continuum();
    GeometricFamily f;
    f.accumulation = rat(5);
    f.scale = rat(1);
    f.ratio = rat(1, 2);
    t.excluded.push_back(f);
    CHECK_THROWS_AS(t.validate(), DomainError);
}
