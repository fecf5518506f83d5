#include "bolzano/topology.hpp"

#include "bolzano/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

namespace bolzano {

std::string to_string(Carrier c) {
    switch (c) {
        case Carrier::Continuum: return "continuum";
        case Carrier::Rationals: return "rationals";
        case Carrier::Dyadics: return "dyadics";
    }
    return "?";
}

std::string to_string(PointClass c) {
    switch (c) {
        case PointClass::Interior: return "interior";
        case PointClass::Boundary: return "boundary";
        case PointClass::Isolated: return "isolated";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Families

Rational GeometricFamily::distance(Index n) const { return scale * ratio.pow(Integer(n)); }

Rational GeometricFamily::point(Index n) const {
    Rational d = distance(n);
    return side == FamilySide::Left ? accumulation - d : accumulation + d;
}

std::optional<Index> GeometricFamily::index_of(const Rational& x) const {
    Rational v = side == FamilySide::Left ? (accumulation - x) / scale : (x - accumulation) / scale;
    if (!v.is_positive() || v > ratio) return std::nullopt;
    if (ratio.pow(Integer(1)) == v) return 1;
    // r^n is strictly decreasing in n; exponential search then bisect
    Index lo = 1, hi = 2;
    while (ratio.pow(Integer(hi)) > v) {
        lo = hi;
        hi *= 2;
        if (hi > (Index(1) << 40)) return std::nullopt;
    }
    while (lo + 1 < hi) {
        Index mid = lo + (hi - lo) / 2;
        if (ratio.pow(Integer(mid)) > v) lo = mid;
        else hi = mid;
    }
    if (ratio.pow(Integer(hi)) == v) return hi;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Membership

bool is_dyadic(const Rational& x) {
    Integer d = x.den();
    return (d & (d - 1)) == 0;
}

namespace {

bool in_interval(const Interval& p, const Rational& x) {
    if (x < p.lo || (x == p.lo && !p.lo_closed)) return false;
    if (x > p.hi || (x == p.hi && !p.hi_closed)) return false;
    return true;
}

bool carrier_admits(Carrier c, const Rational& x) {
    return c != Carrier::Dyadics || is_dyadic(x);
}

bool excluded_by_family(const PointSet1D& s, const Rational& x) {
    for (const GeometricFamily& f : s.excluded) {
        if (f.exclude_accumulation && x == f.accumulation) return true;
        if (f.index_of(x)) return true;
    }
    return false;
}

}  // namespace

void PointSet1D::validate() const {
    for (const Interval& p : pieces)
        if (!(p.lo < p.hi)) throw DomainError("interval requires lo < hi");
    for (const GeometricFamily& f : excluded) {
        if (!f.scale.is_positive()) throw DomainError("family scale must be positive");
        if (!f.ratio.is_positive() || f.ratio >= Rational(1))
            throw DomainError("family ratio must lie in (0, 1)");
        bool inside = false;
        for (const Interval& p : pieces)
            if (in_interval(p, f.accumulation) && in_interval(p, f.point(1))) inside = true;
        if (!inside) throw DomainError("excluded family must lie inside some piece");
    }
}

bool contains(const PointSet1D& s, const Rational& x) {
    for (const Rational& i : s.isolated)
        if (i == x) return true;
    for (const Interval& p : s.pieces) {
        if (in_interval(p, x) && carrier_admits(p.carrier, x))
            return !excluded_by_family(s, x);
    }
    return false;
}

bool has_neighbour_at(const PointSet1D& s, const Rational& x, const Rational& h) {
    if (!h.is_positive()) throw DomainError("neighbour distance must be positive");
    if (!contains(s, x)) throw DomainError("point is not in the set");
    return contains(s, x - h) || contains(s, x + h);
}

// ---------------------------------------------------------------------------
// Per-side structure around a point

namespace {

struct SideData {
    // material coverage extent beyond x via continuum/rationals pieces
    // (open-interval semantics), before family punctures
    Rational room;                 // >= 0
    bool dyadic_room = false;      // a dyadics piece extends on this side
    // families accumulating exactly at x and puncturing this side
    std::vector<const GeometricFamily*> anchored;
    // nearest puncture distance from families not anchored at x (caps the
    // full margin); unset if none within the room
    std::optional<Rational> puncture;
    // nearest material distance when there is no adjacent material
    std::optional<Rational> empty_distance;

    bool adjacent() const { return room.is_positive() || dyadic_room; }
    Rational avail_excluding_anchored() const {
        if (!room.is_positive()) return Rational(0);
        if (puncture && *puncture < room) return *puncture;
        return room;
    }
    bool full() const { return anchored.empty() && avail_excluding_anchored().is_positive(); }
};

// dir = +1 (right) or -1 (left); distances measured as positive offsets.
SideData side_data(const PointSet1D& s, const Rational& x, int dir) {
    SideData out;
    out.room = Rational(0);
    Rational d(dir);

    // extend open material coverage through unions of non-dyadic pieces
    Rational edge = x;     // (x, edge) covered (in signed direction)
    bool edge_in = true;   // the point at 'edge' itself is material (x is in S)
    bool progressed = true;
    while (progressed) {
        progressed = false;
        for (const Interval& p : s.pieces) {
            if (p.carrier == Carrier::Dyadics) continue;
            Rational near = dir > 0 ? p.lo : -p.hi;       // signed start toward direction
            Rational far = dir > 0 ? p.hi : -p.lo;        // signed end
            bool near_closed = dir > 0 ? p.lo_closed : p.hi_closed;
            bool far_closed = dir > 0 ? p.hi_closed : p.lo_closed;
            Rational signed_edge = dir > 0 ? edge : -edge;
            if (near > signed_edge) continue;
            if (near == signed_edge && !edge_in && !near_closed) continue;
            if (far > signed_edge || (far == signed_edge && far_closed && !edge_in)) {
                edge = dir > 0 ? far : -far;
                edge_in = far_closed;
                progressed = true;
            }
        }
    }
    out.room = dir > 0 ? edge - x : x - edge;

    for (const Interval& p : s.pieces) {
        if (p.carrier != Carrier::Dyadics) continue;
        bool covers = dir > 0 ? (p.lo <= x && p.hi > x) : (p.hi >= x && p.lo < x);
        if (covers) out.dyadic_room = true;
    }

    auto note_puncture = [&](const Rational& dist) {
        if (!dist.is_positive()) return;
        if (!out.puncture || dist < *out.puncture) out.puncture = dist;
    };

    // Work in signed coordinates (multiply positions by dir): the side under
    // analysis is the positive axis from x. A Left family keeps its points
    // below its accumulation point in signed space iff dir > 0.
    for (const GeometricFamily& f : s.excluded) {
        bool below_c = (f.side == FamilySide::Left) == (dir > 0);  // signed side of the points
        Rational c_off = dir > 0 ? f.accumulation - x : x - f.accumulation;
        if (c_off.is_zero()) {
            // family anchored at x punctures this side iff its points lie here
            if (!below_c) out.anchored.push_back(&f);
            continue;
        }
        if (c_off.is_positive()) {
            if (below_c) {
                // points fill (c_off - b*r, c_off): the nearest one to x is
                // the first with b*r^n < c_off
                Rational limit = c_off / f.scale;  // want r^n < limit
                Index n = 1;
                Rational rp = f.ratio;
                while (rp >= limit) {
                    ++n;
                    rp = rp * f.ratio;
                    if (n > (Index(1) << 30)) break;
                }
                note_puncture(c_off - f.scale * rp);
            } else {
                // points accumulate just beyond c; the clean region stops at c
                note_puncture(c_off);
            }
            if (f.exclude_accumulation) note_puncture(c_off);
        } else {
            // c lies behind x; points can only cross x from c's far side
            if (below_c) continue;
            Rational past = -c_off;            // distance from c back to x
            Rational limit = past / f.scale;   // points beyond x need r^n > limit
            if (!(f.ratio > limit)) continue;  // even the first point falls short
            Index n = 1;
            while (f.ratio.pow(Integer(n + 1)) > limit) {
                ++n;
                if (n > (Index(1) << 30)) break;
            }
            note_puncture(f.scale * f.ratio.pow(Integer(n)) - past);
        }
    }

    if (!out.adjacent()) {
        std::optional<Rational> nearest;
        auto note_material = [&](const Rational& dist) {
            if (!dist.is_positive()) return;
            if (!nearest || dist < *nearest) nearest = dist;
        };
        for (const Interval& p : s.pieces) {
            Rational start = dir > 0 ? p.lo : -p.hi;
            Rational sx = dir > 0 ? x : -x;
            if (start >= sx) note_material(start - sx);
        }
        for (const Rational& i : s.isolated) {
            Rational off = dir > 0 ? i - x : x - i;
            note_material(off);
        }
        out.empty_distance = nearest;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Coincidence of two geometric distance families:
// solve bl*rl^n == br*rr^m with n, m >= 1.

struct Coincidences {
    enum class Kind { None, Finite, Infinite } kind = Kind::None;
    std::vector<std::pair<Index, Index>> finite;
    // Infinite: (n0 + t*dn, m0 + t*dm) for t >= 0
    Index n0 = 0, m0 = 0, dn = 0, dm = 0;
};

// coprime basis refinement: express values over pairwise-coprime factors
void insert_coprime(std::vector<Integer>& basis, Integer v) {
    if (v < 0) v = -v;
    std::vector<Integer> queue{std::move(v)};
    while (!queue.empty()) {
        Integer w = queue.back();
        queue.pop_back();
        if (w <= 1) continue;
        bool split = false;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            Integer g = boost::multiprecision::gcd(w, basis[i]);
            if (g == 1) continue;
            if (g == basis[i]) {
                while (w % basis[i] == 0) w /= basis[i];
                queue.push_back(w);
                split = true;
                break;
            }
            Integer b1 = basis[i] / g;
            basis[i] = g;
            basis.push_back(b1);
            queue.push_back(w);
            split = true;
            break;
        }
        if (!split) basis.push_back(w);
    }
}

long long valuation(Integer v, const Integer& b) {
    long long e = 0;
    if (v < 0) v = -v;
    while (v % b == 0) {
        v /= b;
        ++e;
    }
    return e;
}

long long rational_valuation(const Rational& r, const Integer& b) {
    return valuation(r.num(), b) - valuation(r.den(), b);
}

std::optional<std::pair<long long, long long>> ext_gcd(long long a, long long b) {
    // returns (x, y) with a*x + b*y = gcd(a, b)
    long long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        long long q = a / b;
        std::tie(a, b) = std::make_pair(b, a - q * b);
        std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
        std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
    }
    if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
    }
    return std::make_pair(x0, y0);  // for gcd = a
}

Coincidences solve_coincidences(const Rational& bl, const Rational& rl, const Rational& br,
                                const Rational& rr) {
    auto verify = [&](Index n, Index m) {
        return n >= 1 && m >= 1 && bl * rl.pow(Integer(n)) == br * rr.pow(Integer(m));
    };

    std::vector<Integer> basis;
    for (const Rational* r : {&bl, &rl, &br, &rr}) {
        insert_coprime(basis, r->num());
        insert_coprime(basis, r->den());
    }
    // equations: n*A_i - m*B_i = D_i over every basis factor
    std::vector<long long> A, B, D;
    for (const Integer& b : basis) {
        if (b <= 1) continue;
        A.push_back(rational_valuation(rl, b));
        B.push_back(rational_valuation(rr, b));
        D.push_back(rational_valuation(br, b) - rational_valuation(bl, b));
    }
    Coincidences out;
    if (A.empty()) return out;  // all values are 1; r < 1 makes this impossible

    // look for two independent rows
    for (std::size_t i = 0; i < A.size(); ++i) {
        for (std::size_t j = i + 1; j < A.size(); ++j) {
            long long det = A[i] * (-B[j]) - A[j] * (-B[i]);
            if (det == 0) continue;
            long long num_n = D[i] * (-B[j]) - D[j] * (-B[i]);
            long long num_m = A[i] * D[j] - A[j] * D[i];
            if (num_n % det != 0 || num_m % det != 0) return out;
            Index n = num_n / det, m = num_m / det;
            if (verify(n, m)) {
                out.kind = Coincidences::Kind::Finite;
                out.finite.push_back({n, m});
            }
            return out;
        }
    }
    // all rows proportional: reduce to the first row with A or B nonzero
    std::size_t pivot = 0;
    while (pivot < A.size() && A[pivot] == 0 && B[pivot] == 0) ++pivot;
    if (pivot == A.size()) return out;
    long long a = A[pivot], b = B[pivot], d = D[pivot];
    // consistency of the other rows rides on exact verification below
    if (a == 0 || b == 0) {
        // one family's ratio is inert on this factor while the other moves:
        // at most one solution, found by direct scan over the moving side
        for (Index t = 1; t <= 64; ++t) {
            for (Index u = 1; u <= 64; ++u)
                if (verify(t, u)) {
                    out.kind = Coincidences::Kind::Finite;
                    out.finite.push_back({t, u});
                    return out;
                }
        }
        return out;
    }
    long long g = std::abs(std::gcd(a, b));
    if (d % g != 0) return out;
    auto xy = ext_gcd(a, -b);
    long long n0 = xy->first * (d / g), m0 = xy->second * (d / g);
    long long dn = b / g, dm = a / g;
    if (dn < 0) {
        dn = -dn;
        dm = -dm;
    }
    if (dm <= 0) {
        // steps move n and m in opposite directions: finitely many positive
        for (long long t = -128; t <= 128; ++t) {
            Index n = n0 + t * dn, m = m0 + t * dm;
            if (verify(n, m)) {
                out.kind = Coincidences::Kind::Finite;
                out.finite.push_back({n, m});
            }
        }
        return out;
    }
    // shift the base solution to the least t with n, m >= 1
    long long t_min = 0;
    if (dn > 0) {
        long long need_n = (1 - n0 + dn - 1);
        long long tn = need_n > 0 ? (need_n + dn - 1) / dn : 0;
        long long need_m = (1 - m0 + dm - 1);
        long long tm = need_m > 0 ? (need_m + dm - 1) / dm : 0;
        t_min = std::max(tn, tm);
    }
    Index n_base = n0 + t_min * dn, m_base = m0 + t_min * dm;
    if (!verify(n_base, m_base)) return out;  // proportional rows were inconsistent
    out.kind = Coincidences::Kind::Infinite;
    out.n0 = n_base;
    out.m0 = m_base;
    out.dn = dn;
    out.dm = dm;
    return out;
}

// ---------------------------------------------------------------------------
// Per-point analysis

struct PointAnalysis {
    bool fails = false;
    Rational threshold;  // every 0 < h < threshold has a neighbour
    std::string description;
    std::vector<Rational> gaps;  // candidate no-neighbour distances
    std::function<Rational(Index)> gap_at;
};

std::vector<Rational> odd_ladder(const Rational& scale, std::size_t count) {
    std::vector<Rational> out;
    Integer odd = 3;
    while (out.size() < count) {
        out.push_back(scale / Rational(odd));
        odd += 2;
    }
    return out;
}

PointAnalysis analyze_point(const PointSet1D& s, const Rational& x) {
    PointAnalysis out;
    SideData right = side_data(s, x, +1);
    SideData left = side_data(s, x, -1);

    if (left.full() || right.full()) {
        out.threshold = max(left.full() ? left.avail_excluding_anchored() : Rational(0),
                            right.full() ? right.avail_excluding_anchored() : Rational(0));
        return out;
    }

    if (!left.adjacent() && !right.adjacent()) {
        Rational g(1);
        if (left.empty_distance) g = min(g, *left.empty_distance);
        if (right.empty_distance) g = min(g, *right.empty_distance);
        out.fails = true;
        out.description = "isolated point: no set material within " + g.to_string();
        out.gaps = {g / 2, g / 3, g / 5};
        return out;
    }

    bool left_dyadic_only = left.adjacent() && !left.room.is_positive() && left.anchored.empty();
    bool right_dyadic_only =
        right.adjacent() && !right.room.is_positive() && right.anchored.empty();

    // bound for usable gap distances: stay out of the other side's material
    auto side_cap = [&](const SideData& sd) -> Rational {
        if (sd.adjacent()) return Rational(1);
        return sd.empty_distance ? *sd.empty_distance : Rational(1);
    };

    if (left_dyadic_only || right_dyadic_only) {
        Rational cap = min(side_cap(left), side_cap(right));
        out.fails = true;
        out.description = "dyadic carrier: no neighbour at non-dyadic distances";
        out.gaps = odd_ladder(cap, 8);
        return out;
    }

    const GeometricFamily* fl = left.anchored.empty() ? nullptr : left.anchored.front();
    const GeometricFamily* fr = right.anchored.empty() ? nullptr : right.anchored.front();

    if (fl && fr) {
        Coincidences co =
            solve_coincidences(fl->scale, fl->ratio, fr->scale, fr->ratio);
        if (co.kind == Coincidences::Kind::Infinite) {
            out.fails = true;
            out.description = "two-sided geometric exclusions coincide at distances " +
                              fl->scale.to_string() + "*" + fl->ratio.to_string() + "^n";
            const GeometricFamily f = *fl;
            Index n0 = co.n0, dn = co.dn;
            out.gap_at = [f, n0, dn](Index t) { return f.distance(n0 + (t - 1) * dn); };
            for (Index t = 1; t <= 3; ++t) out.gaps.push_back(out.gap_at(t));
            return out;
        }
        Rational t = min(left.avail_excluding_anchored(), right.avail_excluding_anchored());
        if (co.kind == Coincidences::Kind::Finite)
            for (const auto& [n, m] : co.finite) t = min(t, fl->distance(n) / 2);
        out.threshold = t;
        return out;
    }

    const GeometricFamily* f = fl ? fl : fr;
    if (f) {
        // one side punctured arbitrarily close by a family, the other side
        // not fully available: the family distances are the gap candidates
        Rational cap = fl ? side_cap(right) : side_cap(left);
        out.fails = true;
        out.description = "no neighbour at the family distances " + f->scale.to_string() + "*" +
                          f->ratio.to_string() + "^n";
        const GeometricFamily fam = *f;
        out.gap_at = [fam](Index n) { return fam.distance(n); };
        Index n = 1;
        while (fam.distance(n) >= cap && n < (Index(1) << 30)) ++n;
        for (Index i = 0; i < 3; ++i) out.gaps.push_back(fam.distance(n + i));
        Index base = n;
        out.gap_at = [fam, base](Index t) { return fam.distance(base + (t - 1)); };
        return out;
    }

    // no family, no dyadic cause, not isolated: sides are merely bounded;
    // at least one side is adjacent with positive room, so some margin works
    out.threshold = max(left.avail_excluding_anchored(), right.avail_excluding_anchored());
    return out;
}

}  // namespace

PointClass classify_point(const PointSet1D& s, const Rational& x) {
    if (!contains(s, x)) throw DomainError("point is not in the set");
    SideData right = side_data(s, x, +1);
    SideData left = side_data(s, x, -1);
    if (left.full() && right.full()) return PointClass::Interior;
    if (!left.adjacent() && !right.adjacent()) return PointClass::Isolated;
    return PointClass::Boundary;
}

Rational completeness_threshold(const PointSet1D& s, const Rational& x) {
    if (!contains(s, x)) throw DomainError("point is not in the set");
    PointAnalysis pa = analyze_point(s, x);
    return pa.fails ? Rational(0) : pa.threshold;
}

namespace {

std::optional<Rational> dyadic_witness(const PointSet1D& s, const Interval& p) {
    if (carrier_admits(Carrier::Dyadics, p.lo) && contains(s, p.lo)) return p.lo;
    if (carrier_admits(Carrier::Dyadics, p.hi) && contains(s, p.hi)) return p.hi;
    // a dyadic grid point strictly inside
    Rational width = p.hi - p.lo;
    Integer denom = 2;
    for (int k = 1; k <= 80; ++k, denom *= 2) {
        if (Rational(denom) * width <= Rational(1)) continue;
        Integer j = floor_int(p.lo * Rational(denom)) + 1;
        for (int tries = 0; tries < 4; ++tries, ++j) {
            Rational cand(j, denom);
            if (cand > p.lo && cand < p.hi && contains(s, cand)) return cand;
        }
    }
    return std::nullopt;
}

}  // namespace

CompletenessVerdict bolzano_complete(const PointSet1D& s) {
    s.validate();
    CompletenessVerdict verdict;

    std::vector<Rational> critical;
    auto add_critical = [&](const Rational& x) {
        if (!contains(s, x)) return;
        for (const Rational& c : critical)
            if (c == x) return;
        critical.push_back(x);
    };

    for (const Interval& p : s.pieces) {
        if (p.carrier == Carrier::Dyadics) {
            if (auto w = dyadic_witness(s, p)) add_critical(*w);
            continue;
        }
        if (p.lo_closed) add_critical(p.lo);
        if (p.hi_closed) add_critical(p.hi);
    }
    for (const GeometricFamily& f : s.excluded) add_critical(f.accumulation);
    for (const Rational& i : s.isolated) add_critical(i);

    for (const Rational& x : critical) {
        PointAnalysis pa = analyze_point(s, x);
        if (!pa.fails) continue;
        // verify each claimed gap exactly; rescued distances are dropped
        std::vector<Rational> verified;
        for (const Rational& h : pa.gaps) {
            if (!h.is_positive()) continue;
            if (!has_neighbour_at(s, x, h)) verified.push_back(h);
        }
        if (verified.size() < 3) continue;  // the coarse analysis was rescued
        verdict.complete = false;
        verdict.point = x;
        verdict.gap_description = pa.description;
        verdict.sample_gaps = std::move(verified);
        verdict.gap_at = pa.gap_at;
        return verdict;
    }
    return verdict;
}

}  // namespace bolzano
