#include "gosper/expr.hpp"

#include <cctype>
#include <climits>
#include <utility>
#include <vector>

#include "gosper/symfun.hpp"

namespace gosper {

const char* var_name(Var v) {
    switch (v) {
        case Var::K: return "k";
        case Var::Z: return "z";
        case Var::A: return "a";
        case Var::B: return "b";
        case Var::NCap: return "N";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Factories

Expr::Ptr Expr::lit(long n) { return lit(Rational(n)); }

// Literals are normalized to nonnegative integers: negative values become
// Neg nodes and fractions become Div nodes, matching what the grammar can
// express, so render/parse round-trips are structure-preserving.
Expr::Ptr Expr::lit(const Rational& q) {
    if (q.sign() < 0) return neg(lit(-q));
    if (!q.is_integer())
        return div(lit(Rational(q.numerator())), lit(Rational(q.denominator())));
    auto e = std::shared_ptr<Expr>(new Expr());
    e->op_ = Op::Literal;
    e->literal_ = q;
    return e;
}

Expr::Ptr Expr::var(Var v) {
    auto e = std::shared_ptr<Expr>(new Expr());
    e->op_ = Op::Variable;
    e->var_ = v;
    return e;
}

Expr::Ptr Expr::add(Ptr a, Ptr b) {
    auto e = std::shared_ptr<Expr>(new Expr());
    e->op_ = Op::Add;
    e->lhs_ = std::move(a);
    e->rhs_ = std::move(b);
    return e;
}

Expr::Ptr Expr::sub(Ptr a, Ptr b) {
    auto e = std::shared_ptr<Expr>(new Expr());
    e->op_ = Op::Sub;
    e->lhs_ = std::move(a);
    e->rhs_ = std::move(b);
    return e;
}

Expr::Ptr Expr::mul(Ptr a, Ptr b) {
    auto e = std::shared_ptr<Expr>(new Expr());
    e->op_ = Op::Mul;
    e->lhs_ = std::move(a);
    e->rhs_ = std::move(b);
    return e;
}

Expr::Ptr Expr::div(Ptr a, Ptr b) {
    auto e = std::shared_ptr<Expr>(new Expr());
    e->op_ = Op::Div;
    e->lhs_ = std::move(a);
    e->rhs_ = std::move(b);
    return e;
}

Expr::Ptr Expr::pow(Ptr base, long exp) {
    auto e = std::shared_ptr<Expr>(new Expr());
    e->op_ = Op::Pow;
    e->lhs_ = std::move(base);
    e->exponent_ = exp;
    return e;
}

Expr::Ptr Expr::neg(Ptr a) {
    auto e = std::shared_ptr<Expr>(new Expr());
    e->op_ = Op::Neg;
    e->lhs_ = std::move(a);
    return e;
}

Expr::Ptr Expr::harmonic_of(int order, Ptr n) {
    auto e = std::shared_ptr<Expr>(new Expr());
    e->op_ = Op::Harmonic;
    e->harmonic_order_ = order;
    e->lhs_ = std::move(n);
    return e;
}

Expr::Ptr Expr::binomial_of(Ptr n, Ptr k) {
    auto e = std::shared_ptr<Expr>(new Expr());
    e->op_ = Op::Binomial;
    e->lhs_ = std::move(n);
    e->rhs_ = std::move(k);
    return e;
}

// ---------------------------------------------------------------------------
// Evaluation

const std::optional<Rational>& Bindings::lookup(Var v) const {
    switch (v) {
        case Var::K: return k;
        case Var::Z: return z;
        case Var::A: return a;
        case Var::B: return b;
        case Var::NCap: return n_cap;
    }
    return k;  // unreachable
}

void Bindings::set(Var v, Rational value) {
    switch (v) {
        case Var::K: k = std::move(value); return;
        case Var::Z: z = std::move(value); return;
        case Var::A: a = std::move(value); return;
        case Var::B: b = std::move(value); return;
        case Var::NCap: n_cap = std::move(value); return;
    }
}

namespace {

long integer_argument(const Rational& value, const char* what) {
    if (!value.is_integer())
        throw DomainError(std::string(what) + " requires an integer argument, got " +
                          value.to_string());
    BigInt n = value.numerator();
    if (!n.fits_long())
        throw DomainError(std::string(what) + " argument out of range");
    return n.to_long();
}

}  // namespace

Rational eval(const Expr::Ptr& e, const Bindings& bindings) {
    if (!e) throw Error("evaluating a null expression");
    switch (e->op()) {
        case Expr::Op::Literal:
            return e->literal();
        case Expr::Op::Variable: {
            const auto& bound = bindings.lookup(e->variable());
            if (!bound)
                throw DomainError(std::string("variable '") +
                                  var_name(e->variable()) + "' is not bound");
            return *bound;
        }
        case Expr::Op::Add:
            return eval(e->lhs(), bindings) + eval(e->rhs(), bindings);
        case Expr::Op::Sub:
            return eval(e->lhs(), bindings) - eval(e->rhs(), bindings);
        case Expr::Op::Mul:
            return eval(e->lhs(), bindings) * eval(e->rhs(), bindings);
        case Expr::Op::Div:
            return eval(e->lhs(), bindings) / eval(e->rhs(), bindings);
        case Expr::Op::Pow:
            return eval(e->lhs(), bindings).pow(e->exponent());
        case Expr::Op::Neg:
            return -eval(e->lhs(), bindings);
        case Expr::Op::Harmonic: {
            long n = integer_argument(eval(e->lhs(), bindings), "H");
            if (n < 0) throw DomainError("H requires a nonnegative argument");
            return harmonic(n, e->harmonic_order());
        }
        case Expr::Op::Binomial: {
            long n = integer_argument(eval(e->lhs(), bindings), "binom");
            long k = integer_argument(eval(e->rhs(), bindings), "binom");
            if (n < 0 || k < 0)
                throw DomainError("binom requires nonnegative arguments");
            return Rational(binomial(BigInt(n), BigInt(k)));
        }
    }
    throw Error("corrupt expression node");
}

bool equal(const Expr::Ptr& a, const Expr::Ptr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->op() != b->op()) return false;
    switch (a->op()) {
        case Expr::Op::Literal: return a->literal() == b->literal();
        case Expr::Op::Variable: return a->variable() == b->variable();
        case Expr::Op::Pow:
            return a->exponent() == b->exponent() && equal(a->lhs(), b->lhs());
        case Expr::Op::Neg: return equal(a->lhs(), b->lhs());
        case Expr::Op::Harmonic:
            return a->harmonic_order() == b->harmonic_order() &&
                   equal(a->lhs(), b->lhs());
        default:
            return equal(a->lhs(), b->lhs()) && equal(a->rhs(), b->rhs());
    }
}

// ---------------------------------------------------------------------------
// Rendering
//
// Parenthesization is chosen so that parse_expr(render(e)) reproduces e
// structurally: right operands of '-' and '/' (and of '*' against another
// product) are wrapped whenever re-parsing would otherwise reassociate them,
// and unary minus wraps anything that is not a bare atom, since the grammar
// gives '-' a tighter binding than '^'.

namespace {

bool is_call(const Expr::Ptr& e) {
    return e->op() == Expr::Op::Harmonic || e->op() == Expr::Op::Binomial;
}

bool is_atom(const Expr::Ptr& e) {
    return is_call(e) || e->op() == Expr::Op::Variable ||
           (e->op() == Expr::Op::Literal && e->literal().sign() >= 0 &&
            e->literal().is_integer());
}

bool is_additive(const Expr::Ptr& e) {
    return e->op() == Expr::Op::Add || e->op() == Expr::Op::Sub;
}

bool is_multiplicative(const Expr::Ptr& e) {
    return e->op() == Expr::Op::Mul || e->op() == Expr::Op::Div;
}

std::string render_node(const Expr::Ptr& e);

std::string wrap(const Expr::Ptr& e) { return "(" + render_node(e) + ")"; }

std::string render_mul_operand(const Expr::Ptr& e, bool right) {
    if (is_additive(e)) return wrap(e);
    if (right && is_multiplicative(e)) return wrap(e);
    return render_node(e);
}

std::string render_node(const Expr::Ptr& e) {
    switch (e->op()) {
        case Expr::Op::Literal:
            // lit() normalizes, so this is always a nonnegative integer.
            return e->literal().to_string();
        case Expr::Op::Variable:
            return var_name(e->variable());
        case Expr::Op::Add:
            return render_node(e->lhs()) + "+" +
                   (is_additive(e->rhs()) ? wrap(e->rhs())
                                          : render_node(e->rhs()));
        case Expr::Op::Sub:
            return render_node(e->lhs()) + "-" +
                   (is_additive(e->rhs()) ? wrap(e->rhs())
                                          : render_node(e->rhs()));
        case Expr::Op::Mul:
            return render_mul_operand(e->lhs(), false) + "*" +
                   render_mul_operand(e->rhs(), true);
        case Expr::Op::Div:
            return render_mul_operand(e->lhs(), false) + "/" +
                   render_mul_operand(e->rhs(), true);
        case Expr::Op::Pow: {
            std::string base =
                is_atom(e->lhs()) ? render_node(e->lhs()) : wrap(e->lhs());
            return base + "^" + std::to_string(e->exponent());
        }
        case Expr::Op::Neg:
            return "-" + (is_atom(e->lhs()) ? render_node(e->lhs())
                                            : wrap(e->lhs()));
        case Expr::Op::Harmonic:
            return "H(" + std::to_string(e->harmonic_order()) + "," +
                   render_node(e->lhs()) + ")";
        case Expr::Op::Binomial:
            return "binom(" + render_node(e->lhs()) + "," +
                   render_node(e->rhs()) + ")";
    }
    throw Error("corrupt expression node");
}

}  // namespace

std::string render(const Expr::Ptr& e) {
    if (!e) throw Error("rendering a null expression");
    return render_node(e);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class ExprParser {
public:
    ExprParser(const std::string& text, int line, int column_offset)
        : text_(text), line_(line), column_offset_(column_offset) {}

    Expr::Ptr parse() {
        skip_space();
        Expr::Ptr e = parse_expr_level();
        skip_space();
        if (pos_ != text_.size())
            fail("unexpected trailing input '" + std::string(1, text_[pos_]) +
                 "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(message, line_,
                         column_offset_ + static_cast<int>(pos_) + 1);
    }

    void skip_space() {
        while (pos_ < text_.size() &&
               (text_[pos_] == ' ' || text_[pos_] == '\t'))
            ++pos_;
    }

    bool peek_is(char c) {
        skip_space();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool consume(char c) {
        if (!peek_is(c)) return false;
        ++pos_;
        return true;
    }

    void expect(char c) {
        if (!consume(c)) fail(std::string("expected '") + c + "'");
    }

    Expr::Ptr parse_expr_level() {
        Expr::Ptr e = parse_term();
        for (;;) {
            if (consume('+'))
                e = Expr::add(std::move(e), parse_term());
            else if (consume('-'))
                e = Expr::sub(std::move(e), parse_term());
            else
                return e;
        }
    }

    Expr::Ptr parse_term() {
        Expr::Ptr e = parse_factor();
        for (;;) {
            if (consume('*'))
                e = Expr::mul(std::move(e), parse_factor());
            else if (consume('/'))
                e = Expr::div(std::move(e), parse_factor());
            else
                return e;
        }
    }

    Expr::Ptr parse_factor() {
        Expr::Ptr base = parse_base();
        if (consume('^')) return Expr::pow(std::move(base), parse_integer());
        return base;
    }

    Expr::Ptr parse_base() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr::Ptr e = parse_expr_level();
            expect(')');
            return e;
        }
        if (c == '-') {
            ++pos_;
            return Expr::neg(parse_base());
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return Expr::lit(Rational(parse_digits()));
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return parse_identifier();
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    // Signed integer, for exponents and H orders.
    long parse_integer() {
        skip_space();
        bool negative = consume('-');
        skip_space();
        if (pos_ >= text_.size() ||
            !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected an integer");
        BigInt n(parse_digits());
        if (!n.fits_long()) fail("integer out of range");
        return negative ? -n.to_long() : n.to_long();
    }

    std::string parse_digits() {
        size_t start = pos_;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        return text_.substr(start, pos_ - start);
    }

    Expr::Ptr parse_identifier() {
        size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '_'))
            ++pos_;
        std::string name = text_.substr(start, pos_ - start);
        if (name == "k") return Expr::var(Var::K);
        if (name == "z") return Expr::var(Var::Z);
        if (name == "a") return Expr::var(Var::A);
        if (name == "b") return Expr::var(Var::B);
        if (name == "N") return Expr::var(Var::NCap);
        if (name == "H") {
            expect('(');
            long order = parse_integer();
            if (order < static_cast<long>(INT_MIN) ||
                order > static_cast<long>(INT_MAX))
                fail("harmonic order out of range");
            expect(',');
            Expr::Ptr arg = parse_expr_level();
            expect(')');
            return Expr::harmonic_of(static_cast<int>(order), std::move(arg));
        }
        if (name == "binom") {
            expect('(');
            Expr::Ptr n = parse_expr_level();
            expect(',');
            Expr::Ptr k = parse_expr_level();
            expect(')');
            return Expr::binomial_of(std::move(n), std::move(k));
        }
        pos_ = start;  // point the error at the identifier
        fail("unknown identifier '" + name + "'");
    }

    const std::string& text_;
    size_t pos_ = 0;
    int line_;
    int column_offset_;
};

}  // namespace

Expr::Ptr parse_expr(const std::string& text, int line, int column_offset) {
    return ExprParser(text, line, column_offset).parse();
}

}  // namespace gosper
