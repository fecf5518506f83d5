#pragma once

// Partial-result sequences and convergence/divergence certificates.
//
// An infinite number expression is read as the sequence of its partial
// results. A certificate is an explicit modulus: convergent kinds carry a
// monotone radius function r with |limit - S_n| <= r(n) for n >= from;
// divergent kinds carry a non-decreasing escape bound with S_n >= b(n)
// (DivergesAbove) resp. S_n <= -b(n) (DivergesBelow). Everything a
// certificate claims is exact and checkable by sampling with rational
// comparisons only.

#include "bolzano/expr.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace bolzano {

// ---------------------------------------------------------------------------
// Sequences

class Sequence {
public:
    static Sequence from_expression(ExprPtr e);
    static Sequence from_generator(std::function<Rational(Index)> gen);
    static Sequence constant(Rational v);
    static Sequence combine(BinOpKind op, Sequence lhs, Sequence rhs);  // pointwise

    // Exact n-th partial result, n >= 1. Memoized; re-evaluation yields the
    // identical rational. Throws EvalError on division by a zero partial
    // result (the index is reported).
    Rational at(Index n) const;

    // Stable identity of the underlying state; two sequences with the same
    // identity produce identical values.
    std::shared_ptr<const void> identity() const;

    struct Impl;  // exposed for the expression-tree builder in sequence.cpp

private:
    explicit Sequence(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<Impl> impl_;
};

Rational evaluate_partial(const ExprPtr& e, Index n);

// ---------------------------------------------------------------------------
// Certificates

enum class CertKind { Cauchy, Vanishes, DivergesAbove, DivergesBelow, Uncertified };

std::string to_string(CertKind k);

// |S_n| >= gap (with the given sign) for all n >= from; the limit, when it
// exists, satisfies the same bound.
struct Apartness {
    int sign = 0;
    Rational gap;
    Index from = 1;
};

// sign(S_n) is constant from the given index on.
struct EventualSign {
    int sign = 0;
    Index from = 1;
};

// The sequence limit equals (limit of the sequence identified by id) + offset.
struct LimitAnchor {
    std::shared_ptr<const void> id;
    Rational offset;
};

struct Certificate {
    CertKind kind = CertKind::Uncertified;
    std::string rule = "uncertified";
    Index from = 1;
    std::function<Rational(Index)> radius;  // Cauchy / Vanishes; non-increasing
    std::function<Rational(Index)> escape;  // Diverges*; non-decreasing
    std::optional<Rational> exact_limit;
    std::optional<Apartness> apart;
    std::optional<EventualSign> esign;
    std::optional<LimitAnchor> anchor;

    bool convergent() const { return kind == CertKind::Cauchy || kind == CertKind::Vanishes; }
    bool divergent() const {
        return kind == CertKind::DivergesAbove || kind == CertKind::DivergesBelow;
    }
};

// ---------------------------------------------------------------------------
// Certified sequences

class CertifiedSequence {
public:
    CertifiedSequence();  // uncertified constant 0; placeholder
    CertifiedSequence(Sequence seq, Certificate cert, ExprPtr source, std::string label);

    const Certificate& cert() const { return cert_; }
    const Sequence& sequence() const { return seq_; }
    const ExprPtr& source() const { return source_; }
    const std::string& label() const { return label_; }

    Rational at(Index n) const { return seq_.at(n); }
    std::shared_ptr<const void> core() const { return seq_.identity(); }

    // Least n >= from with radius(n) <= eps (convergent kinds).
    Index radius_index(const Rational& eps) const;
    // N(q) with the guarantee: for all m, n >= N(q), |S_m - S_n| <= 1/q.
    Index cauchy_index(const Integer& q) const;
    // N(q) with the guarantee: for all n >= N(q), |S_n| <= 1/q (Vanishes).
    Index vanish_index(const Integer& q) const;
    // N(M) with S_n >= M (DivergesAbove) resp. S_n <= -M (DivergesBelow)
    // for all n >= N(M).
    Index diverge_index(const Rational& bound) const;

    // A value within eps of the limit (convergent kinds).
    Rational approx_within(const Rational& eps) const;

private:
    Sequence seq_;
    Certificate cert_;
    ExprPtr source_;
    std::string label_;
};

// ---------------------------------------------------------------------------
// Certification

// Builds the partial-result sequence of e and infers a certificate from the
// recognized families (geometric tails, alternating series, integral tails,
// constant-sign divergence, telescoping products, and arithmetic
// composition). Unrecognized shapes yield Uncertified, never a guess.
CertifiedSequence certify(const ExprPtr& e);

// Pointwise arithmetic on certified sequences with composed certificates.
CertifiedSequence compose(BinOpKind op, const CertifiedSequence& a, const CertifiedSequence& b);

// Packages a sequence with its certificate (normalizing a Cauchy
// certificate with exact limit 0 to Vanishes) and emits it to the audit
// sink.
CertifiedSequence make_certified_sequence(Sequence seq, Certificate cert, ExprPtr source,
                                          std::string label);

CertifiedSequence certified_constant(const Rational& v);

// Budgeted search for an apartness witness on a convergent sequence: scans
// doubling precisions up to 2^max_doublings. Sound: a returned witness is
// exact; nullopt merely means none was found within the budget.
std::optional<Apartness> derive_apartness(const CertifiedSequence& cs, int max_doublings = 21);

// Eventual sign, when soundly derivable (exact limit or apartness).
std::optional<EventualSign> derive_eventual_sign(const CertifiedSequence& cs);

}  // namespace bolzano
