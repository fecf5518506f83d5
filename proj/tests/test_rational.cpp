#include "bolzano/rational.hpp"

#include <doctest.h>

#include <random>

using namespace bolzano;

namespace {

Rational rat(long long n, long long d) { return Rational(Integer(n), Integer(d)); }

std::mt19937_64 rng(20260810);

Rational random_rational() {
    std::uniform_int_distribution<long long> num(-400, 400);
    std::uniform_int_distribution<long long> den(1, 60);
    return rat(num(rng), den(rng));
}

}  // namespace

TEST_CASE("exact arithmetic on fractions") {
    CHECK(rat(1, 2) + rat(1, 3) == rat(5, 6));
    CHECK(rat(1, 2) - rat(1, 2) == Rational(0));
    CHECK(rat(2, 4) * rat(3, 6) == rat(1, 4));
    CHECK(rat(1, 2) / rat(1, 4) == Rational(2));
    CHECK_THROWS_AS(rat(1, 2) / Rational(0), DomainError);
}

TEST_CASE("normalization keeps denominators positive and reduced") {
    Rational a(Integer(-6), Integer(-8));
    CHECK(a == rat(3, 4));
    Rational b(Integer(5), Integer(-10));
    CHECK(b == rat(-1, 2));
    CHECK(b.den() == 2);
    CHECK(rat(0, 7).den() == 1);
    CHECK_THROWS_AS(Rational(Integer(1), Integer(0)), DomainError);
}

TEST_CASE("comparison is a total order by cross multiplication") {
    CHECK(compare(rat(1, 3), rat(2, 6)) == Ordering::Equal);
    CHECK(compare(rat(-1, 2), Rational(0)) == Ordering::Less);
    CHECK(compare(rat(7, 5), rat(4, 3)) == Ordering::Greater);
}

TEST_CASE("nearest integer rounds half to even") {
    CHECK(nearest_integer(rat(7, 2)) == 4);
    CHECK(nearest_integer(rat(10, 3)) == 3);
    CHECK(nearest_integer(rat(-5, 4)) == -1);
    CHECK(nearest_integer(rat(5, 2)) == 2);
    CHECK(nearest_integer(rat(-7, 2)) == -4);
    CHECK(nearest_integer(rat(-1, 2)) == 0);
    for (int i = 0; i < 200; ++i) {
        Rational x = random_rational();
        Integer n = nearest_integer(x);
        Rational err = (x - Rational(n)).abs();
        CHECK(err <= rat(1, 2));
    }
}

TEST_CASE("field laws hold exactly on random fractions") {
    for (int i = 0; i < 300; ++i) {
        Rational a = random_rational(), b = random_rational(), c = random_rational();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + (-a) == Rational(0));
        if (!a.is_zero()) CHECK(a * a.reciprocal() == Rational(1));
        // order consistent with subtraction sign
        auto ord = compare(a, b);
        int s = (a - b).sign();
        CHECK(((ord == Ordering::Less && s < 0) || (ord == Ordering::Equal && s == 0) ||
               (ord == Ordering::Greater && s > 0)));
    }
}

TEST_CASE("integer powers, including negative exponents") {
    CHECK(rat(2, 3).pow(3) == rat(8, 27));
    CHECK(rat(2, 3).pow(0) == Rational(1));
    CHECK(rat(2, 3).pow(-2) == rat(9, 4));
    CHECK(rat(-1, 2).pow(5) == rat(-1, 32));
    CHECK_THROWS_AS(Rational(0).pow(-1), DomainError);
}

TEST_CASE("text form and parsing") {
    CHECK(rat(3, 4).to_string() == "3/4");
    CHECK(Rational(-7).to_string() == "-7");
    CHECK(rat(-2, 3).to_string() == "-2/3");
    CHECK(*parse_rational("5/15") == rat(1, 3));
    CHECK(*parse_rational("-9") == Rational(-9));
    CHECK(!parse_rational("1/0"));
    CHECK(!parse_rational("x"));
    CHECK(!parse_rational("1/2 "));
    CHECK(rat(1, 3).to_decimal(6) == "0.333333");
    CHECK(rat(-22, 7).to_decimal(4) == "-3.1428");
    CHECK(floor_int(rat(-7, 2)) == -4);
    CHECK(ceil_int(rat(-7, 2)) == -3);
}
