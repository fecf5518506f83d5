#include "bolzano/sequence.hpp"

#include "bolzano/audit.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace bolzano {

// ---------------------------------------------------------------------------
// Sequence

struct Sequence::Impl {
    enum class Tag { Literal, Series, Product, BinOp, Generator };

    Tag tag = Tag::Literal;
    Rational value;
    FormulaPtr term;
    BinOpKind op = BinOpKind::Add;
    std::shared_ptr<Impl> lhs, rhs;
    std::function<Rational(Index)> gen;

    std::mutex mutex;
    // Series/Product: rolling frontier plus sparse checkpoints so arbitrary
    // indices stay cheap without caching every partial.
    static constexpr Index kStride = 1024;
    std::map<Index, Rational> checkpoints;
    Index frontier_n = 0;
    Rational frontier_v;
    std::map<Index, Rational> memo;  // Generator

    Rational at(Index n);
    Rational accumulate(Index n);
};

Rational Sequence::Impl::accumulate(Index n) {
    std::lock_guard<std::mutex> lock(mutex);
    Rational unit = tag == Tag::Series ? Rational(0) : Rational(1);
    Index start = 0;
    Rational v = unit;
    if (frontier_n > 0 && frontier_n <= n) {
        start = frontier_n;
        v = frontier_v;
    }
    auto it = checkpoints.upper_bound(n);
    if (it != checkpoints.begin()) {
        --it;
        if (it->first > start) {
            start = it->first;
            v = it->second;
        }
    }
    for (Index k = start + 1; k <= n; ++k) {
        Rational t = evaluate(*term, k);
        if (tag == Tag::Series) v += t;
        else v *= t;
        if (k % kStride == 0) checkpoints.emplace(k, v);
    }
    if (n > frontier_n) {
        frontier_n = n;
        frontier_v = v;
    }
    return v;
}

Rational Sequence::Impl::at(Index n) {
    if (n < 1) throw DomainError("sequence index must be >= 1");
    switch (tag) {
        case Tag::Literal:
            return value;
        case Tag::Series:
        case Tag::Product:
            return accumulate(n);
        case Tag::BinOp: {
            Rational l = lhs->at(n);
            Rational r = rhs->at(n);
            switch (op) {
                case BinOpKind::Add: return l + r;
                case BinOpKind::Sub: return l - r;
                case BinOpKind::Mul: return l * r;
                case BinOpKind::Div:
                    if (r.is_zero())
                        throw EvalError("division by a zero partial result", n);
                    return l / r;
            }
            throw InternalError("unreachable binop");
        }
        case Tag::Generator: {
            std::lock_guard<std::mutex> lock(mutex);
            auto it = memo.find(n);
            if (it != memo.end()) return it->second;
            Rational v = gen(n);
            memo.emplace(n, v);
            return v;
        }
    }
    throw InternalError("unreachable sequence tag");
}

namespace {

std::shared_ptr<Sequence::Impl> build_impl(const ExprPtr& e);

}  // namespace

Sequence Sequence::from_expression(ExprPtr e) { return Sequence(build_impl(e)); }

Sequence Sequence::from_generator(std::function<Rational(Index)> gen) {
    auto impl = std::make_shared<Impl>();
    impl->tag = Impl::Tag::Generator;
    impl->gen = std::move(gen);
    return Sequence(std::move(impl));
}

Sequence Sequence::constant(Rational v) {
    auto impl = std::make_shared<Impl>();
    impl->tag = Impl::Tag::Literal;
    impl->value = std::move(v);
    return Sequence(std::move(impl));
}

Sequence Sequence::combine(BinOpKind op, Sequence lhs, Sequence rhs) {
    auto impl = std::make_shared<Impl>();
    impl->tag = Impl::Tag::BinOp;
    impl->op = op;
    impl->lhs = lhs.impl_;
    impl->rhs = rhs.impl_;
    return Sequence(std::move(impl));
}

Rational Sequence::at(Index n) const { return impl_->at(n); }

std::shared_ptr<const void> Sequence::identity() const {
    return std::shared_ptr<const void>(impl_, impl_.get());
}

namespace {

std::shared_ptr<Sequence::Impl> build_impl(const ExprPtr& e) {
    auto impl = std::make_shared<Sequence::Impl>();
    switch (e->kind) {
        case Expression::Kind::Literal:
            impl->tag = Sequence::Impl::Tag::Literal;
            impl->value = e->literal;
            break;
        case Expression::Kind::SeriesInf:
            impl->tag = Sequence::Impl::Tag::Series;
            impl->term = e->term;
            break;
        case Expression::Kind::ProductInf:
            impl->tag = Sequence::Impl::Tag::Product;
            impl->term = e->term;
            break;
        case Expression::Kind::BinOp:
            impl->tag = Sequence::Impl::Tag::BinOp;
            impl->op = e->op;
            impl->lhs = build_impl(e->lhs);
            impl->rhs = build_impl(e->rhs);
            break;
    }
    return impl;
}

}  // namespace

Rational evaluate_partial(const ExprPtr& e, Index n) {
    return Sequence::from_expression(e).at(n);
}

// ---------------------------------------------------------------------------
// Certificate machinery

std::string to_string(CertKind k) {
    switch (k) {
        case CertKind::Cauchy: return "cauchy-modulus";
        case CertKind::Vanishes: return "vanishes-modulus";
        case CertKind::DivergesAbove: return "diverges-above";
        case CertKind::DivergesBelow: return "diverges-below";
        case CertKind::Uncertified: return "uncertified";
    }
    return "?";
}

namespace {

constexpr Index kMaxSearchIndex = Index(1) << 48;

// Least n >= from satisfying a monotone predicate.
Index solve_monotone(const std::function<bool(Index)>& pred, Index from) {
    if (pred(from)) return from;
    Index lo = from;
    Index step = 1;
    Index hi = from;
    for (;;) {
        if (step > kMaxSearchIndex - lo) throw InternalError("modulus search exceeded index bound");
        hi = lo + step;
        if (pred(hi)) break;
        lo = hi;
        step *= 2;
    }
    while (lo + 1 < hi) {
        Index mid = lo + (hi - lo) / 2;
        if (pred(mid)) hi = mid;
        else lo = mid;
    }
    return hi;
}

Rational inv_q(const Integer& q) { return Rational(Integer(1), q); }

}  // namespace

CertifiedSequence::CertifiedSequence()
    : seq_(Sequence::constant(Rational(0))), label_("0") {
    cert_.kind = CertKind::Vanishes;
    cert_.rule = "constant";
    cert_.radius = [](Index) { return Rational(0); };
    cert_.exact_limit = Rational(0);
    cert_.esign = EventualSign{0, 1};
}

CertifiedSequence::CertifiedSequence(Sequence seq, Certificate cert, ExprPtr source,
                                     std::string label)
    : seq_(std::move(seq)), cert_(std::move(cert)), source_(std::move(source)),
      label_(std::move(label)) {}

Index CertifiedSequence::radius_index(const Rational& eps) const {
    if (!cert_.convergent())
        throw DomainError("radius query on a non-convergent certificate (" + label_ + ")");
    const auto r = cert_.radius;
    return solve_monotone([&, r](Index n) { return r(n) <= eps; }, cert_.from);
}

Index CertifiedSequence::cauchy_index(const Integer& q) const {
    if (q < 1) throw DomainError("precision q must be >= 1");
    return radius_index(Rational(Integer(1), Integer(2) * q));
}

Index CertifiedSequence::vanish_index(const Integer& q) const {
    if (q < 1) throw DomainError("precision q must be >= 1");
    if (cert_.kind != CertKind::Vanishes)
        throw DomainError("vanishing modulus requested from a non-vanishing certificate");
    return radius_index(inv_q(q));
}

Index CertifiedSequence::diverge_index(const Rational& bound) const {
    if (!cert_.divergent())
        throw DomainError("divergence query on a non-divergent certificate (" + label_ + ")");
    const auto e = cert_.escape;
    return solve_monotone([&, e](Index n) { return e(n) >= bound; }, cert_.from);
}

Rational CertifiedSequence::approx_within(const Rational& eps) const {
    return at(radius_index(eps));
}

// ---------------------------------------------------------------------------
// Term-shape analysis: t(n) = coeff * base^n * n^power

namespace {

struct GeoPow {
    Rational coeff;
    Rational base;
    long long power = 0;
};

GeoPow normalized(GeoPow g) {
    if (g.coeff.is_zero() || g.base.is_zero()) return GeoPow{Rational(0), Rational(1), 0};
    return g;
}

long long small_int(const Integer& v) {
    if (v > Integer(1) << 40 || v < -(Integer(1) << 40))
        throw DomainError("exponent out of supported range");
    return v.convert_to<long long>();
}

std::optional<GeoPow> geo_pow(const Formula& f) {
    switch (f.kind) {
        case Formula::Kind::Constant:
            return normalized(GeoPow{f.value, Rational(1), 0});
        case Formula::Kind::Index:
            return GeoPow{Rational(1), Rational(1), 1};
        case Formula::Kind::Add:
        case Formula::Kind::Sub: {
            auto a = geo_pow(*f.lhs);
            auto b = geo_pow(*f.rhs);
            if (!a || !b) return std::nullopt;
            bool sub = f.kind == Formula::Kind::Sub;
            if (b->coeff.is_zero()) return a;
            if (a->coeff.is_zero())
                return normalized(GeoPow{sub ? -b->coeff : b->coeff, b->base, b->power});
            if (a->base == b->base && a->power == b->power)
                return normalized(
                    GeoPow{sub ? a->coeff - b->coeff : a->coeff + b->coeff, a->base, a->power});
            return std::nullopt;
        }
        case Formula::Kind::Mul: {
            auto a = geo_pow(*f.lhs);
            auto b = geo_pow(*f.rhs);
            if (!a || !b) return std::nullopt;
            if (a->coeff.is_zero() || b->coeff.is_zero())
                return GeoPow{Rational(0), Rational(1), 0};
            return GeoPow{a->coeff * b->coeff, a->base * b->base, a->power + b->power};
        }
        case Formula::Kind::Div: {
            auto a = geo_pow(*f.lhs);
            auto b = geo_pow(*f.rhs);
            if (!a || !b) return std::nullopt;
            if (b->coeff.is_zero()) return std::nullopt;
            if (a->coeff.is_zero()) return GeoPow{Rational(0), Rational(1), 0};
            return GeoPow{a->coeff / b->coeff, a->base / b->base, a->power - b->power};
        }
        case Formula::Kind::Pow: {
            auto sub = geo_pow(*f.lhs);
            if (!sub) return std::nullopt;
            const Exponent& e = f.exponent;
            if (!e.uses_index) {
                long long k = small_int(e.offset);
                if (sub->coeff.is_zero())
                    return GeoPow{Rational(0), Rational(1), 0};  // k <= 0 rejected at parse time
                return GeoPow{sub->coeff.pow(e.offset), sub->base.pow(e.offset),
                              sub->power * k};
            }
            if (sub->power != 0 || sub->base != Rational(1)) return std::nullopt;
            if (sub->coeff.is_zero()) return GeoPow{Rational(0), Rational(1), 0};
            return GeoPow{sub->coeff.pow(e.offset), sub->coeff, 0};
        }
    }
    return std::nullopt;
}

// f = 1 + t: returns t.
std::optional<GeoPow> match_one_plus(const Formula& f) {
    const Rational one(1);
    if (f.kind == Formula::Kind::Add) {
        if (f.lhs->kind == Formula::Kind::Constant && f.lhs->value == one) return geo_pow(*f.rhs);
        if (f.rhs->kind == Formula::Kind::Constant && f.rhs->value == one) return geo_pow(*f.lhs);
        return std::nullopt;
    }
    if (f.kind == Formula::Kind::Sub && f.lhs->kind == Formula::Kind::Constant &&
        f.lhs->value == one) {
        auto t = geo_pow(*f.rhs);
        if (!t) return std::nullopt;
        return normalized(GeoPow{-t->coeff, t->base, t->power});
    }
    if (f.kind == Formula::Kind::Constant)
        return normalized(GeoPow{f.value - one, Rational(1), 0});
    return std::nullopt;
}

Rational index_power(Index n, long long k) {
    return Rational(Integer(n)).pow(Integer(k));
}

Certificate uncertified_cert(std::string rule) {
    Certificate c;
    c.kind = CertKind::Uncertified;
    c.rule = std::move(rule);
    return c;
}

Certificate zero_radius_cert(Rational limit, std::string rule) {
    Certificate c;
    c.kind = limit.is_zero() ? CertKind::Vanishes : CertKind::Cauchy;
    c.rule = std::move(rule);
    c.radius = [](Index) { return Rational(0); };
    c.exact_limit = limit;
    c.esign = EventualSign{limit.sign(), 1};
    if (!limit.is_zero()) c.apart = Apartness{limit.sign(), limit.abs(), 1};
    return c;
}

Certificate series_certificate(const Formula& term) {
    auto g = geo_pow(term);
    if (!g) return uncertified_cert("unrecognized-series-term");
    const Rational c = g->coeff;
    const Rational b = g->base;
    const long long k = g->power;
    if (c.is_zero()) return zero_radius_cert(Rational(0), "zero-term");

    const Rational A = c.abs();
    const Rational R = b.abs();
    const Rational one(1);

    // (a) plain geometric: exact sum c*b/(1-b)
    if (k == 0 && R < one) {
        Certificate cert;
        cert.kind = CertKind::Cauchy;
        cert.rule = "geometric-tail";
        Rational scale = A / (one - R);
        cert.radius = [A, R, scale](Index n) { return scale * R.pow(Integer(n) + 1); };
        cert.exact_limit = c * b / (one - b);
        return cert;
    }
    // (b) alternating with non-increasing |t|
    if (b.is_negative() && R <= one && k <= 0 && !(R == one && k == 0)) {
        Certificate cert;
        cert.kind = CertKind::Cauchy;
        cert.rule = "alternating-series";
        cert.radius = [A, R, k](Index n) {
            return A * R.pow(Integer(n) + 1) * index_power(n + 1, k);
        };
        return cert;
    }
    // (c) reciprocal power, integral tail
    if (b == one && k <= -2) {
        long long K = -k;
        Certificate cert;
        cert.kind = CertKind::Cauchy;
        cert.rule = "integral-tail";
        Rational scale = A / Rational(K - 1);
        cert.radius = [scale, K](Index n) { return scale / index_power(n, K - 1); };
        cert.esign = EventualSign{c.sign(), 1};
        return cert;
    }
    // (a') same-sign terms dominated by a geometric
    if (b.is_positive() && R < one && k < 0) {
        Certificate cert;
        cert.kind = CertKind::Cauchy;
        cert.rule = "geometric-domination";
        Rational scale = A / (one - R);
        cert.radius = [R, scale](Index n) { return scale * R.pow(Integer(n) + 1); };
        cert.esign = EventualSign{c.sign(), 1};
        return cert;
    }
    // (a'') ratio tail for |b| < 1 with a polynomial factor
    if (R < one && k > 0) {
        auto rho = [R, k](Index n) {
            return R * Rational(Integer(n) + 2, Integer(n) + 1).pow(Integer(k));
        };
        Index from = solve_monotone([&](Index n) { return rho(n) < Rational(1); }, 1);
        Certificate cert;
        cert.kind = CertKind::Cauchy;
        cert.rule = "ratio-tail";
        cert.from = from;
        cert.radius = [A, R, k, rho](Index n) {
            Rational t_next = A * R.pow(Integer(n) + 1) * index_power(n + 1, k);
            return t_next / (Rational(1) - rho(n));
        };
        if (b.is_positive()) cert.esign = EventualSign{c.sign(), 1};
        return cert;
    }
    // (d) terms bounded away from zero with constant sign
    if (b >= one && k >= 0) {
        Certificate cert;
        cert.kind = c.is_positive() ? CertKind::DivergesAbove : CertKind::DivergesBelow;
        cert.rule = c.is_positive() ? "constant-positive-term" : "constant-negative-term";
        Rational step = A * b;  // |t(n)| >= |t(1)|
        cert.escape = [step](Index n) { return step * Rational(Integer(n)); };
        cert.esign = EventualSign{c.sign(), 1};
        return cert;
    }
    return uncertified_cert("unrecognized-series-term");
}

Certificate product_certificate(const Formula& term) {
    auto t = match_one_plus(term);
    if (!t) return uncertified_cert("unrecognized-product-term");
    const Rational c = t->coeff;
    const Rational b = t->base;
    const long long k = t->power;
    if (c.is_zero()) {
        Certificate cert = zero_radius_cert(Rational(1), "constant-product");
        return cert;
    }
    const Rational one(1);
    const Rational A = c.abs();
    const Rational R = b.abs();
    if (!(R < one && k <= 0 && A * R < one)) return uncertified_cert("unrecognized-product-term");

    // sigma(n) bounds the absolute tail sum of t beyond n
    Rational scale = A / (one - R);
    auto sigma = [R, scale](Index n) { return scale * R.pow(Integer(n) + 1); };
    Index k0 = solve_monotone([&](Index n) { return sigma(n) <= Rational(1, 2); }, 1);

    auto term_abs = [A, R, k](Index j) { return A * R.pow(Integer(j)) * index_power(j, k); };
    Rational p_abs(1), p_low(1);
    for (Index j = 1; j <= k0; ++j) {
        Rational a = term_abs(j);
        p_abs *= one + a;
        p_low *= one - a;
    }
    Rational four_pabs = Rational(4) * p_abs;

    Certificate cert;
    cert.kind = CertKind::Cauchy;
    cert.rule = "product-telescoping";
    cert.from = k0;
    cert.radius = [four_pabs, sigma](Index n) { return four_pabs * sigma(n); };
    cert.apart = Apartness{1, p_low * (one - sigma(k0)), 1};
    cert.esign = EventualSign{1, 1};
    return cert;
}

// ---------------------------------------------------------------------------
// Composition

struct SeqBound {
    Rational value;
    Index from;
};

SeqBound bound_of(const CertifiedSequence& x) {
    Index n1 = x.radius_index(Rational(1));
    return {x.at(n1).abs() + 2, n1};
}

CertKind flipped(CertKind k) {
    if (k == CertKind::DivergesAbove) return CertKind::DivergesBelow;
    if (k == CertKind::DivergesBelow) return CertKind::DivergesAbove;
    return k;
}

std::optional<Apartness> ensure_apartness(const CertifiedSequence& cs, int max_doublings) {
    if (cs.cert().apart) return cs.cert().apart;
    return derive_apartness(cs, max_doublings);
}

Certificate add_like_cert(const CertifiedSequence& a, const CertifiedSequence& b, bool subtract);
Certificate mul_cert(const CertifiedSequence& a, const CertifiedSequence& b);
Certificate div_cert(const CertifiedSequence& a, const CertifiedSequence& b);

CertifiedSequence finalize(Sequence seq, Certificate cert, ExprPtr src, std::string label) {
    if (cert.kind == CertKind::Cauchy && cert.exact_limit && cert.exact_limit->is_zero())
        cert.kind = CertKind::Vanishes;
    if (cert.kind == CertKind::Vanishes && !cert.exact_limit) cert.exact_limit = Rational(0);
    CertifiedSequence cs(std::move(seq), std::move(cert), std::move(src), std::move(label));
    audit::emit_certificate(cs);
    return cs;
}

Certificate add_like_cert(const CertifiedSequence& a, const CertifiedSequence& b, bool subtract) {
    const Certificate& ca = a.cert();
    const Certificate& cb = b.cert();
    if (ca.kind == CertKind::Uncertified || cb.kind == CertKind::Uncertified)
        return uncertified_cert("uncertified-operand");

    int s = subtract ? -1 : 1;
    CertKind bkind = subtract ? flipped(cb.kind) : cb.kind;

    if (ca.convergent() && cb.convergent()) {
        Certificate out;
        out.kind = (ca.kind == CertKind::Vanishes && cb.kind == CertKind::Vanishes)
                       ? CertKind::Vanishes
                       : CertKind::Cauchy;
        out.rule = "sum-of-moduli";
        out.from = std::max(ca.from, cb.from);
        auto ra = ca.radius;
        auto rb = cb.radius;
        out.radius = [ra, rb](Index n) { return ra(n) + rb(n); };

        // exact limits, including anchor identities
        if (ca.exact_limit && cb.exact_limit) {
            out.exact_limit = subtract ? *ca.exact_limit - *cb.exact_limit
                                       : *ca.exact_limit + *cb.exact_limit;
        } else if (subtract) {
            if (ca.anchor && ca.anchor->id == b.core()) out.exact_limit = ca.anchor->offset;
            else if (cb.anchor && cb.anchor->id == a.core()) out.exact_limit = -cb.anchor->offset;
            else if (ca.anchor && cb.anchor && ca.anchor->id == cb.anchor->id)
                out.exact_limit = ca.anchor->offset - cb.anchor->offset;
        }
        // anchor propagation through a known rational shift
        if (!out.exact_limit) {
            if (ca.anchor && cb.exact_limit)
                out.anchor = LimitAnchor{ca.anchor->id, subtract
                                                            ? ca.anchor->offset - *cb.exact_limit
                                                            : ca.anchor->offset + *cb.exact_limit};
            else if (!subtract && cb.anchor && ca.exact_limit)
                out.anchor = LimitAnchor{cb.anchor->id, cb.anchor->offset + *ca.exact_limit};
        }
        // eventual signs for vanishing combinations
        if (out.kind == CertKind::Vanishes && ca.esign && cb.esign) {
            int sb = s * cb.esign->sign;
            int sa = ca.esign->sign;
            if (sa == sb || sa == 0 || sb == 0) {
                int sign = sa != 0 ? sa : sb;
                out.esign = EventualSign{sign, std::max(ca.esign->from, cb.esign->from)};
            }
        }
        // an apart summand plus a vanishing one stays apart
        if (ca.apart && cb.kind == CertKind::Vanishes) {
            Index nb = b.radius_index(ca.apart->gap / 2);
            out.apart = Apartness{ca.apart->sign, ca.apart->gap / 2, std::max(ca.apart->from, nb)};
        } else if (cb.kind != CertKind::Vanishes && ca.kind == CertKind::Vanishes && cb.apart) {
            Index na = a.radius_index(cb.apart->gap / 2);
            out.apart =
                Apartness{s * cb.apart->sign, cb.apart->gap / 2, std::max(cb.apart->from, na)};
        }
        return out;
    }

    if (ca.convergent() && (bkind == CertKind::DivergesAbove || bkind == CertKind::DivergesBelow)) {
        SeqBound ba = bound_of(a);
        Certificate out;
        out.kind = bkind;
        out.rule = "divergence-with-bounded-shift";
        out.from = std::max(cb.from, ba.from);
        auto eb = cb.escape;
        Rational shift = ba.value;
        out.escape = [eb, shift](Index n) { return eb(n) - shift; };
        return out;
    }
    if (cb.convergent() && ca.divergent()) {
        SeqBound bb = bound_of(b);
        Certificate out;
        out.kind = ca.kind;
        out.rule = "divergence-with-bounded-shift";
        out.from = std::max(ca.from, bb.from);
        auto ea = ca.escape;
        Rational shift = bb.value;
        out.escape = [ea, shift](Index n) { return ea(n) - shift; };
        return out;
    }
    if (ca.divergent() &&
        (bkind == CertKind::DivergesAbove || bkind == CertKind::DivergesBelow)) {
        if (ca.kind == bkind) {
            Certificate out;
            out.kind = ca.kind;
            out.rule = "sum-of-divergences";
            out.from = std::max(ca.from, cb.from);
            auto ea = ca.escape;
            auto eb = cb.escape;
            out.escape = [ea, eb](Index n) { return ea(n) + eb(n); };
            return out;
        }
        return uncertified_cert("indeterminate-divergence-sum");
    }
    return uncertified_cert("uncertified-combination");
}

Certificate mul_cert(const CertifiedSequence& a, const CertifiedSequence& b) {
    const Certificate& ca = a.cert();
    const Certificate& cb = b.cert();
    if (ca.kind == CertKind::Uncertified || cb.kind == CertKind::Uncertified)
        return uncertified_cert("uncertified-operand");

    if (ca.convergent() && cb.convergent()) {
        SeqBound ba = bound_of(a);
        SeqBound bb = bound_of(b);
        Certificate out;
        out.kind = (ca.kind == CertKind::Vanishes || cb.kind == CertKind::Vanishes)
                       ? CertKind::Vanishes
                       : CertKind::Cauchy;
        out.rule = "product-of-moduli";
        out.from = std::max({ca.from, cb.from, ba.from, bb.from});
        auto ra = ca.radius;
        auto rb = cb.radius;
        Rational BA = ba.value, BB = bb.value;
        out.radius = [ra, rb, BA, BB](Index n) { return BA * rb(n) + BB * ra(n); };
        if (ca.exact_limit && cb.exact_limit) out.exact_limit = *ca.exact_limit * *cb.exact_limit;
        if (ca.apart && cb.apart)
            out.apart = Apartness{ca.apart->sign * cb.apart->sign, ca.apart->gap * cb.apart->gap,
                                  std::max(ca.apart->from, cb.apart->from)};
        if (ca.esign && cb.esign)
            out.esign = EventualSign{ca.esign->sign * cb.esign->sign,
                                     std::max(ca.esign->from, cb.esign->from)};
        return out;
    }

    if (ca.divergent() && cb.divergent()) {
        Certificate out;
        bool same = ca.kind == cb.kind;
        out.kind = same ? CertKind::DivergesAbove : CertKind::DivergesBelow;
        out.rule = "product-of-divergences";
        Index fa = a.diverge_index(Rational(1));
        Index fb = b.diverge_index(Rational(1));
        out.from = std::max(fa, fb);
        auto ea = ca.escape;
        auto eb = cb.escape;
        out.escape = [ea, eb](Index n) { return ea(n) * eb(n); };
        return out;
    }

    // divergent times a factor apart from zero
    const CertifiedSequence& divseq = ca.divergent() ? a : b;
    const CertifiedSequence& convseq = ca.divergent() ? b : a;
    auto ap = ensure_apartness(convseq, 16);
    if (!ap || ap->sign == 0) return uncertified_cert("product-with-unsigned-factor");
    bool above = divseq.cert().kind == CertKind::DivergesAbove;
    bool result_above = above == (ap->sign > 0);
    Certificate out;
    out.kind = result_above ? CertKind::DivergesAbove : CertKind::DivergesBelow;
    out.rule = "divergence-scaled-apart";
    Index f0 = divseq.diverge_index(Rational(0));
    out.from = std::max({divseq.cert().from, ap->from, f0});
    auto e = divseq.cert().escape;
    Rational gap = ap->gap;
    out.escape = [e, gap](Index n) { return e(n) * gap; };
    return out;
}

Certificate invert_cert(const CertifiedSequence& b) {
    const Certificate& cb = b.cert();
    if (cb.divergent()) {
        Certificate inv;
        inv.kind = CertKind::Vanishes;
        inv.rule = "quotient-by-divergent";
        Index f1 = b.diverge_index(Rational(1));
        inv.from = std::max(cb.from, f1);
        auto e = cb.escape;
        inv.radius = [e](Index n) { return Rational(1) / e(n); };
        inv.exact_limit = Rational(0);
        inv.esign = EventualSign{cb.kind == CertKind::DivergesAbove ? 1 : -1, f1};
        return inv;
    }
    auto ap = ensure_apartness(b, 21);
    if (!ap || ap->sign == 0) return uncertified_cert("denominator-not-apart-from-zero");
    SeqBound bb = bound_of(b);
    Certificate inv;
    inv.kind = CertKind::Cauchy;
    inv.rule = "quotient-apart";
    inv.from = std::max(cb.from, ap->from);
    auto r = cb.radius;
    Rational g2 = ap->gap * ap->gap;
    inv.radius = [r, g2](Index n) { return r(n) / g2; };
    if (cb.exact_limit) inv.exact_limit = cb.exact_limit->reciprocal();
    inv.apart = Apartness{ap->sign, bb.value.reciprocal(), std::max(bb.from, ap->from)};
    inv.esign = EventualSign{ap->sign, ap->from};
    return inv;
}

Certificate div_cert(const CertifiedSequence& a, const CertifiedSequence& b) {
    const Certificate& ca = a.cert();
    const Certificate& cb = b.cert();
    if (ca.kind == CertKind::Uncertified || cb.kind == CertKind::Uncertified)
        return uncertified_cert("uncertified-operand");
    Certificate inv = invert_cert(b);
    if (inv.kind == CertKind::Uncertified) return inv;
    Sequence inv_seq = Sequence::combine(BinOpKind::Div, Sequence::constant(Rational(1)),
                                         b.sequence());
    CertifiedSequence inv_cs(inv_seq, inv, nullptr, "1/(" + b.label() + ")");
    if (ca.divergent() && inv.kind == CertKind::Vanishes)
        return uncertified_cert("indeterminate-quotient");
    return mul_cert(a, inv_cs);
}

const char* op_symbol(BinOpKind op) {
    switch (op) {
        case BinOpKind::Add: return " + ";
        case BinOpKind::Sub: return " - ";
        case BinOpKind::Mul: return " * ";
        case BinOpKind::Div: return "/";
    }
    return "?";
}

}  // namespace

CertifiedSequence make_certified_sequence(Sequence seq, Certificate cert, ExprPtr source,
                                          std::string label) {
    return finalize(std::move(seq), std::move(cert), std::move(source), std::move(label));
}

CertifiedSequence compose(BinOpKind op, const CertifiedSequence& a, const CertifiedSequence& b) {
    Certificate cert;
    switch (op) {
        case BinOpKind::Add: cert = add_like_cert(a, b, false); break;
        case BinOpKind::Sub: cert = add_like_cert(a, b, true); break;
        case BinOpKind::Mul: cert = mul_cert(a, b); break;
        case BinOpKind::Div: cert = div_cert(a, b); break;
    }
    Sequence seq = Sequence::combine(op, a.sequence(), b.sequence());
    ExprPtr src;
    if (a.source() && b.source()) src = Expression::binary(op, a.source(), b.source());
    std::string label = "(" + a.label() + op_symbol(op) + b.label() + ")";
    return finalize(std::move(seq), std::move(cert), std::move(src), std::move(label));
}

CertifiedSequence certify(const ExprPtr& e) {
    switch (e->kind) {
        case Expression::Kind::Literal: {
            Certificate cert = zero_radius_cert(e->literal, "constant");
            return finalize(Sequence::from_expression(e), std::move(cert), e, to_text(*e));
        }
        case Expression::Kind::SeriesInf: {
            Certificate cert = series_certificate(*e->term);
            return finalize(Sequence::from_expression(e), std::move(cert), e, to_text(*e));
        }
        case Expression::Kind::ProductInf: {
            Certificate cert = product_certificate(*e->term);
            return finalize(Sequence::from_expression(e), std::move(cert), e, to_text(*e));
        }
        case Expression::Kind::BinOp: {
            CertifiedSequence l = certify(e->lhs);
            CertifiedSequence r = certify(e->rhs);
            return compose(e->op, l, r);
        }
    }
    throw InternalError("unreachable expression kind");
}

CertifiedSequence certified_constant(const Rational& v) {
    return certify(Expression::make_literal(v));
}

std::optional<Apartness> derive_apartness(const CertifiedSequence& cs, int max_doublings) {
    const Certificate& c = cs.cert();
    if (c.apart) return c.apart;
    if (c.divergent()) {
        Index n = cs.diverge_index(Rational(1));
        return Apartness{c.kind == CertKind::DivergesAbove ? 1 : -1, Rational(1), n};
    }
    if (!c.convergent()) return std::nullopt;
    if (c.exact_limit) {
        if (c.exact_limit->is_zero()) return std::nullopt;
        Rational half = c.exact_limit->abs() / 2;
        Index n = cs.radius_index(half);
        return Apartness{c.exact_limit->sign(), half, n};
    }
    Integer q = 1;
    for (int i = 0; i <= max_doublings; ++i) {
        Index n = cs.radius_index(Rational(Integer(1), Integer(2) * q));
        Rational v = cs.at(n);
        Rational margin(Integer(1), q);
        if (v.abs() > margin)
            return Apartness{v.sign(), v.abs() - margin, n};
        q *= 2;
    }
    return std::nullopt;
}

std::optional<EventualSign> derive_eventual_sign(const CertifiedSequence& cs) {
    const Certificate& c = cs.cert();
    if (c.esign) return c.esign;
    if (c.divergent()) {
        Index n = cs.diverge_index(Rational(1));
        return EventualSign{c.kind == CertKind::DivergesAbove ? 1 : -1, n};
    }
    if (c.exact_limit && !c.exact_limit->is_zero()) {
        Rational half = c.exact_limit->abs() / 2;
        return EventualSign{c.exact_limit->sign(), cs.radius_index(half)};
    }
    if (c.apart) return EventualSign{c.apart->sign, c.apart->from};
    return std::nullopt;
}

}  // namespace bolzano
