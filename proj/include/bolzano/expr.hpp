#pragma once

// Infinite number expressions: a small DSL whose infinite constructors
// sum(n, t) and prod(n, t) make the general term explicit. Term formulas
// range over the bound index (n >= 1) and always evaluate to an exact
// rational; division subterms are checked at parse time so evaluation is
// total on n >= 1.

#include "bolzano/error.hpp"
#include "bolzano/rational.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace bolzano {

using Index = long long;

// ---------------------------------------------------------------------------
// Term formulas

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Exponent of a power subterm: either a fixed integer or (index + offset).
struct Exponent {
    bool uses_index = false;
    Integer offset = 0;

    Integer value_at(Index n) const { return uses_index ? Integer(n) + offset : offset; }
};

struct Formula {
    enum class Kind { Constant, Index, Add, Sub, Mul, Div, Pow };

    Kind kind;
    Rational value;        // Constant
    FormulaPtr lhs, rhs;   // binary nodes; Pow keeps its base in lhs
    Exponent exponent;     // Pow

    static FormulaPtr constant(Rational v);
    static FormulaPtr index();
    static FormulaPtr binary(Kind k, FormulaPtr l, FormulaPtr r);
    static FormulaPtr power(FormulaPtr base, Exponent e);
};

Rational evaluate(const Formula& f, Index n);
bool structurally_equal(const Formula& a, const Formula& b);
std::string to_text(const Formula& f);

// ---------------------------------------------------------------------------
// Expressions

struct Expression;
using ExprPtr = std::shared_ptr<const Expression>;

enum class BinOpKind { Add, Sub, Mul, Div };

struct Expression {
    enum class Kind { Literal, SeriesInf, ProductInf, BinOp };

    Kind kind;
    Rational literal;          // Literal
    std::string index_name;    // SeriesInf / ProductInf
    FormulaPtr term;           // SeriesInf / ProductInf
    BinOpKind op = BinOpKind::Add;
    ExprPtr lhs, rhs;          // BinOp

    static ExprPtr make_literal(Rational v);
    static ExprPtr series(std::string index_name, FormulaPtr term);
    static ExprPtr product(std::string index_name, FormulaPtr term);
    static ExprPtr binary(BinOpKind op, ExprPtr l, ExprPtr r);
};

// Throws ParseError (with position) on syntax errors, unbound identifiers,
// and term formulas whose denominators may vanish for some n >= 1.
ExprPtr parse_expression(std::string_view text);

// Parses a standalone term formula with the given bound variable, e.g.
// "x^2 - 2" with variable "x". Same grammar and checks as sum/prod bodies.
FormulaPtr parse_term_formula(std::string_view text, const std::string& variable);

// Canonical text form; parse_expression(to_text(e)) is structurally equal
// to e.
std::string to_text(const Expression& e);

bool structurally_equal(const Expression& a, const Expression& b);

// Rewrites an expression into a sum-of-products normal form over its
// non-arithmetic subtrees (series/products as opaque atoms), folding
// rational constants and cancelling syntactically equal atoms. All
// rewrites are exact ring identities, so limits are preserved; used to
// recognise differences that cancel to zero.
ExprPtr ring_normal_form(const ExprPtr& e);

}  // namespace bolzano
