#include "bolzano/expr.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <utility>
#include <vector>

namespace bolzano {

// ---------------------------------------------------------------------------
// Construction

FormulaPtr Formula::constant(Rational v) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Constant;
    f->value = std::move(v);
    return f;
}

FormulaPtr Formula::index() {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Index;
    return f;
}

FormulaPtr Formula::binary(Kind k, FormulaPtr l, FormulaPtr r) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->lhs = std::move(l);
    f->rhs = std::move(r);
    return f;
}

FormulaPtr Formula::power(FormulaPtr base, Exponent e) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Pow;
    f->lhs = std::move(base);
    f->exponent = std::move(e);
    return f;
}

ExprPtr Expression::make_literal(Rational v) {
    auto e = std::make_shared<Expression>();
    e->kind = Kind::Literal;
    e->literal = std::move(v);
    return e;
}

ExprPtr Expression::series(std::string index_name, FormulaPtr term) {
    auto e = std::make_shared<Expression>();
    e->kind = Kind::SeriesInf;
    e->index_name = std::move(index_name);
    e->term = std::move(term);
    return e;
}

ExprPtr Expression::product(std::string index_name, FormulaPtr term) {
    auto e = std::make_shared<Expression>();
    e->kind = Kind::ProductInf;
    e->index_name = std::move(index_name);
    e->term = std::move(term);
    return e;
}

ExprPtr Expression::binary(BinOpKind op, ExprPtr l, ExprPtr r) {
    auto e = std::make_shared<Expression>();
    e->kind = Kind::BinOp;
    e->op = op;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
}

// ---------------------------------------------------------------------------
// Evaluation

Rational evaluate(const Formula& f, Index n) {
    switch (f.kind) {
        case Formula::Kind::Constant:
            return f.value;
        case Formula::Kind::Index:
            return Rational(Integer(n));
        case Formula::Kind::Add:
            return evaluate(*f.lhs, n) + evaluate(*f.rhs, n);
        case Formula::Kind::Sub:
            return evaluate(*f.lhs, n) - evaluate(*f.rhs, n);
        case Formula::Kind::Mul:
            return evaluate(*f.lhs, n) * evaluate(*f.rhs, n);
        case Formula::Kind::Div: {
            Rational d = evaluate(*f.rhs, n);
            if (d.is_zero()) throw EvalError("term denominator is zero", n);
            return evaluate(*f.lhs, n) / d;
        }
        case Formula::Kind::Pow: {
            Rational base = evaluate(*f.lhs, n);
            Integer e = f.exponent.value_at(n);
            if (base.is_zero() && e < 0) throw EvalError("zero base with negative exponent", n);
            return base.pow(e);
        }
    }
    throw InternalError("unreachable formula kind");
}

// ---------------------------------------------------------------------------
// Structural equality

bool structurally_equal(const Formula& a, const Formula& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Formula::Kind::Constant:
            return a.value == b.value;
        case Formula::Kind::Index:
            return true;
        case Formula::Kind::Pow:
            return a.exponent.uses_index == b.exponent.uses_index &&
                   a.exponent.offset == b.exponent.offset &&
                   structurally_equal(*a.lhs, *b.lhs);
        default:
            return structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
    }
}

bool structurally_equal(const Expression& a, const Expression& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Expression::Kind::Literal:
            return a.literal == b.literal;
        case Expression::Kind::SeriesInf:
        case Expression::Kind::ProductInf:
            return structurally_equal(*a.term, *b.term);
        case Expression::Kind::BinOp:
            return a.op == b.op && structurally_equal(*a.lhs, *b.lhs) &&
                   structurally_equal(*a.rhs, *b.rhs);
    }
    return false;
}

// ---------------------------------------------------------------------------
// Sign analysis over n >= 1 (conservative; used to reject denominators and
// zero bases that could vanish)

namespace {

struct SignSet {
    bool pos = false, neg = false, zero = false;

    static SignSet of(const Rational& v) {
        SignSet s;
        if (v.is_positive()) s.pos = true;
        else if (v.is_negative()) s.neg = true;
        else s.zero = true;
        return s;
    }
    static SignSet all() { return SignSet{true, true, true}; }
    SignSet negated() const { return SignSet{neg, pos, zero}; }
    bool may_be_zero() const { return zero; }
};

SignSet sign_add(const SignSet& a, const SignSet& b) {
    SignSet r;
    if ((a.pos && b.neg) || (a.neg && b.pos)) return SignSet::all();
    r.pos = (a.pos && (b.pos || b.zero)) || (b.pos && a.zero);
    r.neg = (a.neg && (b.neg || b.zero)) || (b.neg && a.zero);
    r.zero = a.zero && b.zero;
    return r;
}

SignSet sign_mul(const SignSet& a, const SignSet& b) {
    SignSet r;
    r.zero = a.zero || b.zero;
    r.pos = (a.pos && b.pos) || (a.neg && b.neg);
    r.neg = (a.pos && b.neg) || (a.neg && b.pos);
    return r;
}

SignSet analyze_sign(const Formula& f) {
    switch (f.kind) {
        case Formula::Kind::Constant:
            return SignSet::of(f.value);
        case Formula::Kind::Index:
            return SignSet{true, false, false};
        case Formula::Kind::Add:
            return sign_add(analyze_sign(*f.lhs), analyze_sign(*f.rhs));
        case Formula::Kind::Sub:
            return sign_add(analyze_sign(*f.lhs), analyze_sign(*f.rhs).negated());
        case Formula::Kind::Mul:
            return sign_mul(analyze_sign(*f.lhs), analyze_sign(*f.rhs));
        case Formula::Kind::Div: {
            SignSet d = analyze_sign(*f.rhs);
            d.zero = false;  // parse-time validation already rejected
            SignSet r = sign_mul(analyze_sign(*f.lhs), d);
            return r;
        }
        case Formula::Kind::Pow: {
            SignSet base = analyze_sign(*f.lhs);
            const Exponent& e = f.exponent;
            if (!e.uses_index) {
                if (e.offset == 0) return SignSet{true, false, false};
                bool even = (e.offset % 2) == 0;
                SignSet r;
                r.zero = base.zero && e.offset > 0;
                if (even) {
                    r.pos = base.pos || base.neg;
                } else {
                    r.pos = base.pos;
                    r.neg = base.neg;
                }
                return r;
            }
            // exponent n + offset, n >= 1
            SignSet r;
            r.zero = base.zero;
            r.pos = base.pos || base.neg;
            r.neg = base.neg;  // odd exponents occur for alternating bases
            return r;
        }
    }
    throw InternalError("unreachable formula kind");
}

}  // namespace

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExprPtr parse() {
        ExprPtr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input");
        return e;
    }

    FormulaPtr parse_standalone_formula(const std::string& variable) {
        bound_ = variable;
        FormulaPtr f = parse_formula();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input");
        return f;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::string bound_;  // nonempty while parsing a term formula

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

    Integer parse_digits() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected a number");
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }

    std::string parse_ident() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() &&
            (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                           text_[pos_] == '_'))
                ++pos_;
        }
        if (pos_ == start) fail("expected an identifier");
        return std::string(text_.substr(start, pos_ - start));
    }

    bool lookahead_ident(std::string_view kw) {
        skip_ws();
        std::size_t p = pos_;
        if (text_.substr(p).substr(0, kw.size()) != kw) return false;
        std::size_t after = p + kw.size();
        if (after < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[after])) ||
                                     text_[after] == '_'))
            return false;
        return true;
    }

    // ---- expression level ----

    ExprPtr parse_expr() {
        ExprPtr e = parse_term();
        for (;;) {
            if (eat('+')) e = Expression::binary(BinOpKind::Add, e, parse_term());
            else if (eat('-')) e = Expression::binary(BinOpKind::Sub, e, parse_term());
            else return e;
        }
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_factor();
        for (;;) {
            if (eat('*')) {
                e = Expression::binary(BinOpKind::Mul, e, parse_factor());
            } else if (eat('/')) {
                std::size_t at = pos_;
                ExprPtr rhs = parse_factor();
                // fold rational literals: "1/2" denotes the fraction, not a quotient node
                if (e->kind == Expression::Kind::Literal && rhs->kind == Expression::Kind::Literal) {
                    if (rhs->literal.is_zero()) throw ParseError("literal division by zero", at);
                    e = Expression::make_literal(e->literal / rhs->literal);
                } else {
                    e = Expression::binary(BinOpKind::Div, e, rhs);
                }
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_factor() {
        if (eat('-')) {
            ExprPtr inner = parse_factor();
            if (inner->kind == Expression::Kind::Literal)
                return Expression::make_literal(-inner->literal);
            return Expression::binary(BinOpKind::Sub, Expression::make_literal(Rational(0)), inner);
        }
        return parse_primary();
    }

    ExprPtr parse_primary() {
        skip_ws();
        if (peek() == '^') fail("power is only available inside sum/prod term formulas");
        if (at_digit()) return Expression::make_literal(Rational(parse_digits()));
        if (eat('(')) {
            ExprPtr e = parse_expr();
            expect(')');
            return e;
        }
        if (lookahead_ident("sum") || lookahead_ident("prod")) {
            bool is_sum = lookahead_ident("sum");
            parse_ident();
            expect('(');
            std::string name = parse_ident();
            expect(',');
            bound_ = name;
            FormulaPtr t = parse_formula();
            bound_.clear();
            expect(')');
            return is_sum ? Expression::series(name, t) : Expression::product(name, t);
        }
        if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
            std::size_t at = pos_;
            std::string id = parse_ident();
            throw ParseError("unbound identifier '" + id + "'", at);
        }
        fail("expected an expression");
    }

    // ---- formula level ----

    FormulaPtr parse_formula() {
        FormulaPtr f = parse_fterm();
        for (;;) {
            if (eat('+')) f = Formula::binary(Formula::Kind::Add, f, parse_fterm());
            else if (eat('-')) f = Formula::binary(Formula::Kind::Sub, f, parse_fterm());
            else return f;
        }
    }

    FormulaPtr parse_fterm() {
        FormulaPtr f = parse_ffactor();
        for (;;) {
            if (eat('*')) {
                f = Formula::binary(Formula::Kind::Mul, f, parse_ffactor());
            } else if (eat('/')) {
                std::size_t at = pos_;
                FormulaPtr rhs = parse_ffactor();
                if (f->kind == Formula::Kind::Constant && rhs->kind == Formula::Kind::Constant) {
                    if (rhs->value.is_zero()) throw ParseError("literal division by zero", at);
                    f = Formula::constant(f->value / rhs->value);
                } else {
                    if (analyze_sign(*rhs).may_be_zero())
                        throw ParseError("term denominator may be zero for some n >= 1", at);
                    f = Formula::binary(Formula::Kind::Div, f, rhs);
                }
            } else {
                return f;
            }
        }
    }

    FormulaPtr parse_ffactor() {
        if (eat('-')) {
            FormulaPtr inner = parse_ffactor();
            if (inner->kind == Formula::Kind::Constant) return Formula::constant(-inner->value);
            return Formula::binary(Formula::Kind::Sub, Formula::constant(Rational(0)), inner);
        }
        return parse_fpower();
    }

    FormulaPtr parse_fpower() {
        FormulaPtr base = parse_fprimary();
        if (!eat('^')) return base;
        std::size_t at = pos_;
        Exponent e = parse_exponent();
        SignSet bs = analyze_sign(*base);
        bool exp_can_be_nonpositive =
            e.uses_index ? (e.offset <= -1) : (e.offset <= 0);
        if (bs.may_be_zero() && exp_can_be_nonpositive)
            throw ParseError("power base may be zero with a non-positive exponent", at);
        return Formula::power(base, e);
    }

    Exponent parse_exponent() {
        Exponent e;
        if (eat('(')) {
            if (at_digit() || peek() == '-') {
                bool neg = eat('-');
                e.offset = parse_digits();
                if (neg) e.offset = -e.offset;
            } else {
                std::string id = parse_ident();
                if (id != bound_) fail("unbound identifier '" + id + "' in exponent");
                e.uses_index = true;
                if (eat('+')) e.offset = parse_digits();
                else if (eat('-')) e.offset = -parse_digits();
            }
            expect(')');
            return e;
        }
        if (peek() == '-') {
            eat('-');
            e.offset = -parse_digits();
            return e;
        }
        if (at_digit()) {
            e.offset = parse_digits();
            return e;
        }
        std::string id = parse_ident();
        if (id != bound_) fail("unbound identifier '" + id + "' in exponent");
        e.uses_index = true;
        return e;
    }

    FormulaPtr parse_fprimary() {
        skip_ws();
        if (at_digit()) return Formula::constant(Rational(parse_digits()));
        if (eat('(')) {
            FormulaPtr f = parse_formula();
            expect(')');
            return f;
        }
        if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
            std::size_t at = pos_;
            std::string id = parse_ident();
            if (id == bound_) return Formula::index();
            throw ParseError("unbound identifier '" + id + "'", at);
        }
        fail("expected a term formula");
    }
};

}  // namespace

ExprPtr parse_expression(std::string_view text) { return Parser(text).parse(); }

FormulaPtr parse_term_formula(std::string_view text, const std::string& variable) {
    return Parser(text).parse_standalone_formula(variable);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int formula_prec(const Formula& f) {
    switch (f.kind) {
        case Formula::Kind::Add:
        case Formula::Kind::Sub:
            return 1;
        case Formula::Kind::Mul:
        case Formula::Kind::Div:
            return 2;
        case Formula::Kind::Pow:
            return 3;
        default:
            return 4;
    }
}

void print_formula(const Formula& f, const std::string& name, int parent, bool right,
                   std::string& out);

void print_formula_child(const FormulaPtr& f, const std::string& name, int parent, bool right,
                         std::string& out) {
    int p = formula_prec(*f);
    bool parens = p < parent || (p == parent && right && parent <= 2);
    // fraction and negative literals re-lex as compound factors at the
    // multiplicative level
    if (f->kind == Formula::Kind::Constant && parent >= 2 &&
        (f->value.is_negative() || (right && !f->value.is_integer())))
        parens = true;
    if (parens) out += "(";
    print_formula(*f, name, parens ? 0 : parent, right && !parens, out);
    if (parens) out += ")";
}

void print_formula(const Formula& f, const std::string& name, int /*parent*/, bool /*right*/,
                   std::string& out) {
    switch (f.kind) {
        case Formula::Kind::Constant:
            out += f.value.to_string();
            return;
        case Formula::Kind::Index:
            out += name;
            return;
        case Formula::Kind::Add:
            print_formula_child(f.lhs, name, 1, false, out);
            out += " + ";
            print_formula_child(f.rhs, name, 1, true, out);
            return;
        case Formula::Kind::Sub:
            print_formula_child(f.lhs, name, 1, false, out);
            out += " - ";
            print_formula_child(f.rhs, name, 1, true, out);
            return;
        case Formula::Kind::Mul:
            print_formula_child(f.lhs, name, 2, false, out);
            out += " * ";
            print_formula_child(f.rhs, name, 2, true, out);
            return;
        case Formula::Kind::Div:
            print_formula_child(f.lhs, name, 2, false, out);
            out += "/";
            print_formula_child(f.rhs, name, 2, true, out);
            return;
        case Formula::Kind::Pow: {
            const Formula& base = *f.lhs;
            bool base_atom = (base.kind == Formula::Kind::Constant && !base.value.is_negative() &&
                              base.value.is_integer()) ||
                             base.kind == Formula::Kind::Index;
            if (!base_atom) out += "(";
            print_formula(base, name, 0, false, out);
            if (!base_atom) out += ")";
            out += "^";
            const Exponent& e = f.exponent;
            if (e.uses_index) {
                if (e.offset == 0) {
                    out += name;
                } else {
                    out += "(" + name + (e.offset > 0 ? "+" : "-");
                    Integer a = e.offset < 0 ? Integer(-e.offset) : e.offset;
                    out += a.str() + ")";
                }
            } else if (e.offset < 0) {
                out += "(-" + Integer(-e.offset).str() + ")";
            } else {
                out += e.offset.str();
            }
            return;
        }
    }
}

int expr_prec(const Expression& e) {
    if (e.kind != Expression::Kind::BinOp) return 4;
    return (e.op == BinOpKind::Add || e.op == BinOpKind::Sub) ? 1 : 2;
}

void print_expr(const Expression& e, std::string& out);

void print_expr_child(const ExprPtr& e, int parent, bool right, std::string& out) {
    int p = expr_prec(*e);
    bool parens = p < parent || (p == parent && right);
    if (e->kind == Expression::Kind::Literal && parent >= 2 &&
        (e->literal.is_negative() || (right && !e->literal.is_integer())))
        parens = true;
    if (parens) out += "(";
    print_expr(*e, out);
    if (parens) out += ")";
}

void print_expr(const Expression& e, std::string& out) {
    switch (e.kind) {
        case Expression::Kind::Literal:
            out += e.literal.to_string();
            return;
        case Expression::Kind::SeriesInf:
        case Expression::Kind::ProductInf: {
            out += e.kind == Expression::Kind::SeriesInf ? "sum(" : "prod(";
            std::string name = e.index_name.empty() ? "n" : e.index_name;
            out += name + ", ";
            print_formula(*e.term, name, 0, false, out);
            out += ")";
            return;
        }
        case Expression::Kind::BinOp: {
            int prec = expr_prec(e);
            const char* opname = e.op == BinOpKind::Add   ? " + "
                                 : e.op == BinOpKind::Sub ? " - "
                                 : e.op == BinOpKind::Mul ? " * "
                                                          : "/";
            print_expr_child(e.lhs, prec, false, out);
            out += opname;
            print_expr_child(e.rhs, prec, true, out);
            return;
        }
    }
}

}  // namespace

std::string to_text(const Formula& f) {
    std::string out;
    print_formula(f, "n", 0, false, out);
    return out;
}

std::string to_text(const Expression& e) {
    std::string out;
    print_expr(e, out);
    return out;
}

// ---------------------------------------------------------------------------
// Ring normal form

namespace {

using AtomKey = std::map<std::string, long long>;

struct NormalPoly {
    std::map<AtomKey, Rational> terms;
    std::map<std::string, ExprPtr> atoms;
};

void add_term(NormalPoly& p, const AtomKey& k, const Rational& c) {
    if (c.is_zero()) return;
    auto it = p.terms.find(k);
    if (it == p.terms.end()) {
        p.terms.emplace(k, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) p.terms.erase(it);
    }
}

void register_atom(NormalPoly& p, const ExprPtr& e, std::string key) {
    p.atoms.emplace(std::move(key), e);
}

NormalPoly as_atom(const ExprPtr& e) {
    NormalPoly p;
    std::string key = to_text(*e);
    AtomKey k;
    k[key] = 1;
    register_atom(p, e, key);
    p.terms.emplace(std::move(k), Rational(1));
    return p;
}

NormalPoly normalize(const ExprPtr& e) {
    switch (e->kind) {
        case Expression::Kind::Literal: {
            NormalPoly p;
            if (!e->literal.is_zero()) p.terms.emplace(AtomKey{}, e->literal);
            return p;
        }
        case Expression::Kind::SeriesInf:
        case Expression::Kind::ProductInf:
            return as_atom(e);
        case Expression::Kind::BinOp: {
            NormalPoly l = normalize(e->lhs);
            NormalPoly r = normalize(e->rhs);
            NormalPoly out;
            out.atoms = l.atoms;
            out.atoms.insert(r.atoms.begin(), r.atoms.end());
            switch (e->op) {
                case BinOpKind::Add:
                case BinOpKind::Sub: {
                    for (const auto& [k, c] : l.terms) add_term(out, k, c);
                    for (const auto& [k, c] : r.terms)
                        add_term(out, k, e->op == BinOpKind::Add ? c : -c);
                    return out;
                }
                case BinOpKind::Mul: {
                    for (const auto& [ka, ca] : l.terms) {
                        for (const auto& [kb, cb] : r.terms) {
                            AtomKey k = ka;
                            for (const auto& [a, x] : kb) {
                                k[a] += x;
                                if (k[a] == 0) k.erase(a);
                            }
                            add_term(out, k, ca * cb);
                        }
                    }
                    return out;
                }
                case BinOpKind::Div: {
                    if (r.terms.size() != 1) return as_atom(e);
                    const auto& [kd, cd] = *r.terms.begin();
                    for (const auto& [ka, ca] : l.terms) {
                        AtomKey k = ka;
                        for (const auto& [a, x] : kd) {
                            k[a] -= x;
                            if (k[a] == 0) k.erase(a);
                        }
                        add_term(out, k, ca / cd);
                    }
                    return out;
                }
            }
            throw InternalError("unreachable binop kind");
        }
    }
    throw InternalError("unreachable expression kind");
}

ExprPtr rebuild(const NormalPoly& p) {
    if (p.terms.empty()) return Expression::make_literal(Rational(0));
    ExprPtr sum;
    for (const auto& [atoms, coeff] : p.terms) {
        ExprPtr num;
        ExprPtr den;
        for (const auto& [key, exp] : atoms) {
            const ExprPtr& atom = p.atoms.at(key);
            long long reps = exp > 0 ? exp : -exp;
            ExprPtr& side = exp > 0 ? num : den;
            for (long long i = 0; i < reps; ++i)
                side = side ? Expression::binary(BinOpKind::Mul, side, atom) : atom;
        }
        ExprPtr t;
        if (!num) {
            t = Expression::make_literal(coeff);
        } else if (coeff == Rational(1)) {
            t = num;
        } else {
            t = Expression::binary(BinOpKind::Mul, Expression::make_literal(coeff), num);
        }
        if (den) t = Expression::binary(BinOpKind::Div, t, den);
        sum = sum ? Expression::binary(BinOpKind::Add, sum, t) : t;
    }
    return sum;
}

}  // namespace

ExprPtr ring_normal_form(const ExprPtr& e) { return rebuild(normalize(e)); }

}  // namespace bolzano
