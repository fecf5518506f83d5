#pragma once

// Exact arithmetic substrate: unbounded integers and always-normalized
// rationals. Every other module computes exclusively with these values;
// there is no floating point anywhere in the library.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bolzano {

using Integer = boost::multiprecision::cpp_int;

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class Ordering { Less, Equal, Greater };

// Normalized fraction: denominator > 0, gcd(|num|, den) = 1, zero is 0/1.
// Equality is therefore structural.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(Integer n) : num_(std::move(n)), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(int n) : num_(n), den_(1) {}
    Rational(Integer n, Integer d);

    const Integer& num() const { return num_; }
    const Integer& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    bool is_positive() const { return num_ > 0; }
    bool is_negative() const { return num_ < 0; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    Rational operator-() const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;  // throws DomainError on o = 0

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    std::strong_ordering operator<=>(const Rational& o) const;

    Rational abs() const { return num_ < 0 ? -*this : *this; }
    Rational reciprocal() const;  // throws DomainError on 0

    // Integer exponent; negative exponents require a nonzero base.
    Rational pow(const Integer& e) const;

    // "p/q", with "/q" omitted when q = 1.
    std::string to_string() const;
    // Display convenience: fixed-point decimal with the given number of
    // fractional digits, truncated toward zero.
    std::string to_decimal(int digits) const;

private:
    void normalize();
    Integer num_;
    Integer den_;
};

// a/b vs c/d by cross multiplication; total order consistent with
// subtraction sign.
Ordering compare(const Rational& a, const Rational& b);

// Integer nearest to x; exact ties round to the even integer.
Integer nearest_integer(const Rational& x);

Integer floor_int(const Rational& x);
Integer ceil_int(const Rational& x);

// Parses optionally signed "p" or "p/q" (q > 0). Whitespace is not consumed.
std::optional<Rational> parse_rational(std::string_view text);

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace bolzano
