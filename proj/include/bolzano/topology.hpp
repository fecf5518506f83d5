#pragma once

// Symbolic 1-D point sets and the neighbour-based continuum criterion.
// A set is a finite union of intervals over a carrier (full continuum,
// rationals, or dyadic rationals), optionally punctured by geometric
// families accumulating at a point, plus finitely many isolated points.
// The criterion: every point of the set has at least one neighbour at
// every distance below some per-point threshold.

#include "bolzano/rational.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bolzano {

using Index = long long;

enum class Carrier { Continuum, Rationals, Dyadics };
enum class FamilySide { Left, Right };

std::string to_string(Carrier c);

struct Interval {
    Rational lo, hi;
    bool lo_closed = true, hi_closed = true;
    Carrier carrier = Carrier::Continuum;
};

// Points c -/+ b*r^n for n >= 1, accumulating at c; optionally c itself is
// excluded too.
struct GeometricFamily {
    Rational accumulation;  // c
    Rational scale;         // b > 0
    Rational ratio;         // 0 < r < 1
    FamilySide side = FamilySide::Left;
    bool exclude_accumulation = false;

    Rational point(Index n) const;
    Rational distance(Index n) const;  // b*r^n
    // n with point(n) == x, if any
    std::optional<Index> index_of(const Rational& x) const;
};

struct PointSet1D {
    std::vector<Interval> pieces;
    std::vector<Rational> isolated;
    std::vector<GeometricFamily> excluded;

    void validate() const;  // throws DomainError on malformed descriptions
};

bool is_dyadic(const Rational& x);

bool contains(const PointSet1D& s, const Rational& x);

// contains(s, x - h) or contains(s, x + h); requires contains(s, x).
bool has_neighbour_at(const PointSet1D& s, const Rational& x, const Rational& h);

enum class PointClass { Interior, Boundary, Isolated };

std::string to_string(PointClass c);

PointClass classify_point(const PointSet1D& s, const Rational& x);

struct CompletenessVerdict {
    bool complete = true;
    // failure data
    Rational point;
    std::string gap_description;
    std::vector<Rational> sample_gaps;  // >= 3, each verified to have no neighbour
    // symbolic gap distances when the failure comes from a geometric family
    std::function<Rational(Index)> gap_at;
};

// Symbolic case analysis over the finite description. Every FailsAt sample
// distance is re-verified through has_neighbour_at before returning.
CompletenessVerdict bolzano_complete(const PointSet1D& s);

// The per-point distance threshold the completeness analysis guarantees:
// every h <= threshold has a neighbour (0 at failing points). Used by
// randomized probing.
Rational completeness_threshold(const PointSet1D& s, const Rational& x);

}  // namespace bolzano
