#include "bolzano/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <ostream>
#include <sstream>

namespace bolzano {

namespace {
Integer gcd(Integer a, Integer b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Integer t = a % b;
        a = std::move(b);
        b = std::move(t);
    }
    return a;
}
}  // namespace

Rational::Rational(Integer n, Integer d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_ == 0) throw DomainError("rational with zero denominator");
    normalize();
}

void Rational::normalize() {
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    Integer g = gcd(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
    return Rational(num_ * o.num_, den_ * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw DomainError("division by zero");
    return Rational(num_ * o.den_, den_ * o.num_);
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    Integer lhs = num_ * o.den_;
    Integer rhs = o.num_ * den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Rational Rational::reciprocal() const {
    if (num_ == 0) throw DomainError("reciprocal of zero");
    return Rational(den_, num_);
}

Rational Rational::pow(const Integer& e) const {
    if (e < 0) return reciprocal().pow(-e);
    Rational base = *this;
    Rational acc(1);
    Integer k = e;
    while (k > 0) {
        if ((k & 1) != 0) acc *= base;
        k >>= 1;
        if (k > 0) base *= base;
    }
    return acc;
}

std::string Rational::to_string() const {
    std::string s = num_.str();
    if (den_ != 1) {
        s += "/";
        s += den_.str();
    }
    return s;
}

std::string Rational::to_decimal(int digits) const {
    Integer n = num_ < 0 ? Integer(-num_) : num_;
    Integer whole = n / den_;
    Integer rem = n % den_;
    std::string out = num_ < 0 ? "-" : "";
    out += whole.str();
    if (digits > 0) {
        out += ".";
        for (int i = 0; i < digits; ++i) {
            rem *= 10;
            out += char('0' + int(rem / den_));
            rem %= den_;
        }
    }
    return out;
}

Ordering compare(const Rational& a, const Rational& b) {
    auto c = a <=> b;
    if (c < 0) return Ordering::Less;
    if (c > 0) return Ordering::Greater;
    return Ordering::Equal;
}

Integer floor_int(const Rational& x) {
    Integer q = x.num() / x.den();
    if (x.num() < 0 && x.num() % x.den() != 0) --q;
    return q;
}

Integer ceil_int(const Rational& x) {
    Integer q = x.num() / x.den();
    if (x.num() > 0 && x.num() % x.den() != 0) ++q;
    return q;
}

Integer nearest_integer(const Rational& x) {
    Integer f = floor_int(x);
    Rational frac = x - Rational(f);  // in [0, 1)
    auto twice = compare(frac + frac, Rational(1));
    if (twice == Ordering::Less) return f;
    if (twice == Ordering::Greater) return f + 1;
    // exact half: round to even
    return (f % 2 == 0) ? f : f + 1;
}

std::optional<Rational> parse_rational(std::string_view text) {
    size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        neg = text[i] == '-';
        ++i;
    }
    size_t dstart = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == dstart) return std::nullopt;
    Integer num(std::string(text.substr(dstart, i - dstart)));
    Integer den = 1;
    if (i < text.size() && text[i] == '/') {
        ++i;
        size_t qstart = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == qstart) return std::nullopt;
        den = Integer(std::string(text.substr(qstart, i - qstart)));
        if (den == 0) return std::nullopt;
    }
    if (i != text.size()) return std::nullopt;
    if (neg) num = -num;
    return Rational(num, den);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
}

}  // namespace bolzano
