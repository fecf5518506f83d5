#include "bolzano/theorems.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>
#include <vector>

namespace bolzano {

// ---------------------------------------------------------------------------
// Polynomials

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    while (coeffs_.size() > 1 && coeffs_.back().is_zero()) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(Rational(0));
}

namespace {

std::vector<Rational> poly_from_formula(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind) {
        case K::Constant:
            return {f.value};
        case K::Index:
            return {Rational(0), Rational(1)};
        case K::Add:
        case K::Sub: {
            auto a = poly_from_formula(*f.lhs);
            auto b = poly_from_formula(*f.rhs);
            std::vector<Rational> out(std::max(a.size(), b.size()), Rational(0));
            for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
            for (std::size_t i = 0; i < b.size(); ++i)
                out[i] = f.kind == K::Add ? out[i] + b[i] : out[i] - b[i];
            return out;
        }
        case K::Mul: {
            auto a = poly_from_formula(*f.lhs);
            auto b = poly_from_formula(*f.rhs);
            std::vector<Rational> out(a.size() + b.size() - 1, Rational(0));
            for (std::size_t i = 0; i < a.size(); ++i)
                for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
            return out;
        }
        case K::Div: {
            auto b = poly_from_formula(*f.rhs);
            if (b.size() != 1 || b[0].is_zero())
                throw DomainError("polynomial division only by nonzero constants");
            auto a = poly_from_formula(*f.lhs);
            for (auto& c : a) c /= b[0];
            return a;
        }
        case K::Pow: {
            if (f.exponent.uses_index)
                throw DomainError("polynomials require fixed integer exponents");
            if (f.exponent.offset < 0) throw DomainError("polynomials require exponents >= 0");
            auto base = poly_from_formula(*f.lhs);
            std::vector<Rational> out{Rational(1)};
            Integer k = f.exponent.offset;
            for (Integer i = 0; i < k; ++i) {
                std::vector<Rational> next(out.size() + base.size() - 1, Rational(0));
                for (std::size_t a = 0; a < out.size(); ++a)
                    for (std::size_t b = 0; b < base.size(); ++b) next[a + b] += out[a] * base[b];
                out = std::move(next);
            }
            return out;
        }
    }
    throw InternalError("unreachable formula kind");
}

}  // namespace

Polynomial Polynomial::parse(std::string_view text, const std::string& variable) {
    FormulaPtr f = parse_term_formula(text, variable);
    return Polynomial(poly_from_formula(*f));
}

Rational Polynomial::operator()(const Rational& x) const {
    Rational acc(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    std::vector<Rational> out(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) out[i] -= o.coeffs_[i];
    return Polynomial(std::move(out));
}

bool Polynomial::is_zero() const { return coeffs_.size() == 1 && coeffs_[0].is_zero(); }

Rational Polynomial::slope_bound(const Rational& lo, const Rational& hi) const {
    Rational m = max(lo.abs(), hi.abs());
    Rational bound(0);
    Rational mpow(1);  // m^(i-1)
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
        bound += Rational(Integer(i)) * coeffs_[i].abs() * mpow;
        mpow *= m;
    }
    return bound;
}

std::string Polynomial::to_text(const std::string& variable) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        const Rational& c = coeffs_[i];
        if (c.is_zero() && !(first && i == 0)) continue;
        if (!first) os << (c.is_negative() ? " - " : " + ");
        else if (c.is_negative()) os << "-";
        Rational a = c.abs();
        if (i == 0 || a != Rational(1)) os << a.to_string();
        if (i >= 1) {
            if (a != Rational(1)) os << "*";
            os << variable;
            if (i >= 2) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

ContinuousFunction ContinuousFunction::from_polynomial(Polynomial p) {
    ContinuousFunction f;
    Polynomial copy = p;
    f.eval = [copy](const Rational& x) { return copy(x); };
    f.modulus = [copy](const Rational& lo, const Rational& hi, const Integer& q) {
        Rational slope = copy.slope_bound(lo, hi);
        if (!slope.is_positive()) return Rational(1);
        return min(Rational(1), Rational(Integer(1), q) / slope);
    };
    f.poly = std::move(p);
    return f;
}

ContinuousFunction ContinuousFunction::constant(const Rational& c) {
    return from_polynomial(Polynomial(std::vector<Rational>{c}));
}

// ---------------------------------------------------------------------------
// BC-limits

MeasurableSequence MeasurableSequence::from_partial_results(const ExprPtr& series) {
    CertifiedSequence cs = certify(series);
    if (!cs.cert().convergent())
        throw DomainError("partial results do not form a BC-sequence: certificate is " +
                          to_string(cs.cert().kind));
    MeasurableSequence xs;
    xs.at = [cs](Index k) { return MeasurableNumber::literal(cs.at(k)); };
    xs.modulus = [cs](const Integer& q) { return cs.cauchy_index(q); };
    xs.declared_limit = cs.cert().exact_limit;
    xs.anchor = LimitAnchor{cs.core(), Rational(0)};
    return xs;
}

MeasurableNumber bc_limit(const MeasurableSequence& xs) {
    auto at = xs.at;
    auto modulus = xs.modulus;
    auto gen = [at, modulus](Index m) {
        Index k = std::max<Index>(1, modulus(Integer(4) * Integer(m)));
        return at(k).approx(Rational(Integer(1), Integer(4) * Integer(m)));
    };
    Certificate cert;
    cert.kind = CertKind::Cauchy;
    cert.rule = "bc-limit-diagonal";
    // |L - r_m| <= 1/(4m) (approximation) + 1/(4m) (modulus spread)
    cert.radius = [](Index m) { return Rational(Integer(1), Integer(2) * m); };
    cert.exact_limit = xs.declared_limit;
    cert.anchor = xs.anchor;
    CertifiedSequence cs = make_certified_sequence(Sequence::from_generator(gen), std::move(cert),
                                                   nullptr, "bc-limit");
    return MeasurableNumber(std::move(cs));
}

// ---------------------------------------------------------------------------
// Greatest boundary

BoundaryPredicate BoundaryPredicate::from_polynomial(const Polynomial& p, const Rational& lower,
                                                     const Rational& counter) {
    BoundaryPredicate b;
    Polynomial copy = p;
    b.query = [copy](const Rational& x, const Rational& tol) {
        Rational v = copy(x);
        if (v <= -tol) return Tri::Holds;
        if (v >= tol) return Tri::Fails;
        return Tri::WithinTolerance;
    };
    b.exact_value = [copy](const Rational& x) { return std::optional<Rational>(copy(x)); };
    b.lower_witness = lower;
    b.counter_witness = counter;
    return b;
}

namespace {

struct BisectionState {
    BoundaryPredicate pred;
    Rational lo, hi;
    Rational tol_floor;  // query tolerance floor tied to the target precision
    std::optional<Rational> exact_hit;     // f(m) == 0 exactly
    std::optional<Rational> accepted;      // WithinTolerance persisted at the floor
    std::vector<Rational> midpoints;
    Rational max_holds;
    Rational min_fails;
    bool seen_holds = false, seen_fails = false;
    std::mutex mutex;

    void record(const Rational& x, Tri answer) {
        if (answer == Tri::Holds) {
            if (seen_fails && x >= min_fails)
                throw PreconditionError(
                    "predicate violates the monotone boundary structure: Holds at " +
                    x.to_string() + " but Fails at " + min_fails.to_string());
            if (!seen_holds || x > max_holds) max_holds = x;
            seen_holds = true;
        } else if (answer == Tri::Fails) {
            if (seen_holds && x <= max_holds)
                throw PreconditionError(
                    "predicate violates the monotone boundary structure: Fails at " +
                    x.to_string() + " but Holds at " + max_holds.to_string());
            if (!seen_fails || x < min_fails) min_fails = x;
            seen_fails = true;
        }
    }

    void ensure(std::size_t steps) {
        std::lock_guard<std::mutex> lock(mutex);
        while (midpoints.size() < steps && !exact_hit && !accepted) {
            Rational m = (lo + hi) / Rational(2);
            midpoints.push_back(m);
            if (pred.exact_value) {
                std::optional<Rational> v = pred.exact_value(m);
                if (v) {
                    if (v->is_zero()) {
                        exact_hit = m;
                        return;
                    }
                    if (v->is_negative()) lo = m;
                    else hi = m;
                    continue;
                }
            }
            // refine the tolerance at this midpoint until the answer turns
            // strict; a WithinTolerance that survives down to the floor
            // already satisfies the boundary postcondition at m
            Rational tol = (hi - lo) / Rational(8);
            Tri ans = pred.query(m, tol);
            while (ans == Tri::WithinTolerance && tol > tol_floor) {
                tol /= Rational(2);
                ans = pred.query(m, tol);
            }
            if (ans == Tri::WithinTolerance) {
                accepted = m;
                return;
            }
            record(m, ans);
            if (ans == Tri::Fails) hi = m;
            else lo = m;
        }
    }

    Rational value_at(Index k) {
        ensure(std::size_t(k));
        std::lock_guard<std::mutex> lock(mutex);
        if (std::size_t(k) <= midpoints.size()) return midpoints[std::size_t(k) - 1];
        return exact_hit ? *exact_hit : *accepted;
    }
};

Index steps_for_width(const Rational& width, const Rational& target) {
    Index s = 0;
    Rational w = width;
    while (w > target) {
        w /= Rational(2);
        ++s;
        if (s > 1 << 26) throw InternalError("bisection depth exceeded");
    }
    return s;
}

}  // namespace

MeasurableNumber greatest_boundary(const BoundaryPredicate& pred, const Integer& q) {
    if (q < 1) throw DomainError("precision q must be >= 1");
    const Rational& u = pred.lower_witness;
    const Rational& v = pred.counter_witness;
    if (!(u < v)) throw PreconditionError("witnesses must satisfy lower < counter");
    Rational width = v - u;

    if (pred.exact_value) {
        std::optional<Rational> fu = pred.exact_value(u);
        std::optional<Rational> fv = pred.exact_value(v);
        if (fu && fu->is_positive())
            throw PreconditionError("declared lower witness fails the property");
        if (fv && fv->is_negative())
            throw PreconditionError("declared counter-witness satisfies the property");
        if (fu && fu->is_zero()) return MeasurableNumber::literal(u);
        if (fv && fv->is_zero()) return MeasurableNumber::literal(v);
    } else {
        Rational tol0 = width / Rational(8);
        if (pred.query(u, tol0) == Tri::Fails)
            throw PreconditionError("declared lower witness fails the property");
        if (pred.query(v, tol0) == Tri::Holds)
            throw PreconditionError("declared counter-witness satisfies the property");
    }

    auto state = std::make_shared<BisectionState>();
    state->pred = pred;
    state->lo = u;
    state->hi = v;
    state->tol_floor = Rational(Integer(1), Integer(8) * q);

    Rational quarter(Integer(1), Integer(4) * q);
    state->ensure(std::size_t(steps_for_width(width, quarter)));
    {
        std::lock_guard<std::mutex> lock(state->mutex);
        if (state->exact_hit) return MeasurableNumber::literal(*state->exact_hit);
    }

    MeasurableSequence xs;
    xs.at = [state](Index k) { return MeasurableNumber::literal(state->value_at(k)); };
    xs.modulus = [width](const Integer& qq) {
        return std::max<Index>(1, steps_for_width(width, Rational(Integer(1), qq)));
    };
    return bc_limit(xs);
}

// ---------------------------------------------------------------------------
// Intermediate value

MeasurableNumber intermediate_value(const ContinuousFunction& f, const ContinuousFunction& g,
                                    const Rational& alpha, const Rational& beta,
                                    const Integer& q) {
    if (q < 1) throw DomainError("precision q must be >= 1");
    if (!(alpha < beta)) throw PreconditionError("requires alpha < beta");
    Rational fa = f.eval(alpha), ga = g.eval(alpha);
    Rational fb = f.eval(beta), gb = g.eval(beta);
    if (!(fa < ga)) throw PreconditionError("requires f(alpha) < g(alpha)");
    if (!(fb > gb)) throw PreconditionError("requires f(beta) > g(beta)");

    Integer q2 = Integer(2) * q;
    Rational delta = min(f.modulus(alpha, beta, q2), g.modulus(alpha, beta, q2));
    if (!delta.is_positive()) throw PreconditionError("continuity modulus must be positive");

    BoundaryPredicate pred;
    auto fe = f.eval;
    auto ge = g.eval;
    pred.query = [fe, ge, alpha](const Rational& i, const Rational& tol) {
        Rational d = fe(alpha + i) - ge(alpha + i);
        if (d <= -tol) return Tri::Holds;
        if (d >= tol) return Tri::Fails;
        return Tri::WithinTolerance;
    };
    if (f.poly && g.poly) {
        Polynomial diff = *f.poly - *g.poly;
        pred.exact_value = [diff, alpha](const Rational& i) {
            return std::optional<Rational>(diff(alpha + i));
        };
    }
    pred.lower_witness = Rational(0);
    pred.counter_witness = beta - alpha;

    Integer qi = ceil_int(delta.reciprocal() / Rational(4)) + 1;
    if (qi < 1) qi = 1;
    MeasurableNumber offset = greatest_boundary(pred, qi);
    MeasurableNumber r = MeasurableNumber::literal(alpha) + offset;

    Rational rv = r.approx(delta / 2);
    Rational residue = (fe(rv) - ge(rv)).abs();
    if (residue > Rational(Integer(1), q))
        throw PreconditionError("continuity modulus violated while probing the root (|f-g| = " +
                                residue.to_string() + ")");
    return r;
}

// ---------------------------------------------------------------------------
// Between two variable quantities

std::string to_string(BetweenResult::Case c) {
    switch (c) {
        case BetweenResult::Case::InfinitelyMany: return "infinitely-many";
        case BetweenResult::Case::ExactlyOne: return "exactly-one";
        case BetweenResult::Case::None: return "none";
    }
    return "?";
}

namespace {

std::vector<Index> sample_ladder(Index depth) {
    std::vector<Index> ks{1, 2};
    for (Index k = 4; k < depth; k *= 2) ks.push_back(k);
    if (depth > 2) ks.push_back(depth);
    return ks;
}

void verify_pair_ordering(const VariableQuantityPair& pair, const std::vector<Index>& ks,
                          const Integer& budget) {
    for (Index j : ks) {
        for (Index k : ks) {
            ComparisonVerdict v = compare(pair.lower(j), pair.upper(k), budget);
            if (v.kind != ComparisonVerdict::Kind::Less) {
                std::ostringstream os;
                os << "pair ordering violated: X_" << j << " vs Y_" << k << " is "
                   << to_string(v.kind);
                throw PreconditionError(os.str());
            }
        }
    }
}

}  // namespace

BetweenResult between_sets(const VariableQuantityPair& pair, Index sample_depth,
                           const Integer& budget) {
    if (sample_depth < 2) throw DomainError("sample depth must be >= 2");
    std::vector<Index> ks = sample_ladder(sample_depth);
    verify_pair_ordering(pair, ks, budget);

    switch (pair.mode) {
        case GapMode::BoundedBelow: {
            const Rational& g = pair.gap_floor;
            if (!g.is_positive()) throw PreconditionError("gap floor must be positive");
            Rational y_min;
            bool first = true;
            for (Index k : ks) {
                Rational a = pair.upper(k).approx(g / 8);
                if (first || a < y_min) y_min = a;
                first = false;
            }
            MeasurableNumber a = MeasurableNumber::literal(y_min - g / 2);
            MeasurableNumber a2 = MeasurableNumber::literal(y_min - g);
            for (Index k : ks) {
                bool ok = compare(pair.lower(k), a2, budget).kind ==
                              ComparisonVerdict::Kind::Less &&
                          compare(a, pair.upper(k), budget).kind == ComparisonVerdict::Kind::Less;
                if (!ok)
                    throw PreconditionError(
                        "could not verify the between-witnesses at the sample depth");
            }
            BetweenResult out;
            out.kind = BetweenResult::Case::InfinitelyMany;
            out.witness = a;
            out.second = a2;
            return out;
        }
        case GapMode::Vanishing: {
            if (!pair.gap_modulus) throw PreconditionError("vanishing mode requires a gap modulus");
            auto lower = pair.lower;
            auto upper = pair.upper;
            auto gap = pair.gap_modulus;
            MeasurableSequence xs;
            xs.at = [lower, upper](Index m) {
                Index k = (m + 1) / 2;
                return m % 2 == 1 ? lower(k) : upper(k);
            };
            xs.modulus = [gap](const Integer& qq) { return 2 * std::max<Index>(1, gap(qq)); };
            xs.declared_limit = pair.declared_limit;
            xs.anchor = pair.anchor;
            BetweenResult out;
            out.kind = BetweenResult::Case::ExactlyOne;
            out.witness = bc_limit(xs);
            return out;
        }
        case GapMode::VanishingAttained: {
            if (!pair.attained_extremum)
                throw PreconditionError("attained mode requires the declared extremum");
            BetweenResult out;
            out.kind = BetweenResult::Case::None;
            out.extremum = pair.attained_extremum;
            return out;
        }
    }
    throw InternalError("unreachable gap mode");
}

BetweenResult neighbour_realization(const MeasurableNumber& d, bool attained_maximum,
                                    const Integer& budget) {
    ComparisonVerdict positive = compare(d, MeasurableNumber::literal(Rational(0)), budget);
    if (positive.kind != ComparisonVerdict::Kind::Greater)
        throw PreconditionError("the distance must be verifiably greater than zero; verdict: " +
                                to_string(positive.kind));

    // shared cache of approximations of d at precision 1/(8k^2)
    auto cache = std::make_shared<std::map<Index, Rational>>();
    auto cache_mutex = std::make_shared<std::mutex>();
    MeasurableNumber dd = d;
    auto approx_d = [cache, cache_mutex, dd](Index k) {
        std::lock_guard<std::mutex> lock(*cache_mutex);
        auto it = cache->find(k);
        if (it != cache->end()) return it->second;
        Rational a = dd.approx(Rational(Integer(1), Integer(8) * Integer(k) * Integer(k)));
        cache->emplace(k, a);
        return a;
    };

    VariableQuantityPair pair;
    pair.upper = [approx_d](Index k) {
        return MeasurableNumber::literal(approx_d(k) + Rational(Integer(1), Integer(k)));
    };
    if (attained_maximum) {
        pair.lower = [approx_d, dd](Index k) {
            if (k == 1) return MeasurableNumber::literal(approx_d(1) - Rational(1));
            return dd;  // X attains its greatest value d
        };
        pair.mode = GapMode::VanishingAttained;
        pair.attained_extremum = dd;
    } else {
        pair.lower = [approx_d](Index k) {
            return MeasurableNumber::literal(approx_d(k) - Rational(Integer(1), Integer(k)));
        };
        pair.mode = GapMode::Vanishing;
        // Y_k - X_k = 2/k exactly, so 2q indices suffice
        pair.gap_modulus = [](const Integer& q) {
            return std::max<Index>(1, Index(2) * q.convert_to<Index>());
        };
        pair.declared_limit = d.base().cert().exact_limit;
        pair.anchor = LimitAnchor{d.core(), Rational(0)};
    }
    return between_sets(pair, 16, budget);
}

}  // namespace bolzano
