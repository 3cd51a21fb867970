#pragma once

#include <memory>
#include <optional>
#include <string>

#include "gosper/numeric.hpp"

namespace gosper {

// Variables a coefficient formula may reference: the term index k and the
// scheme parameters z, a, b, N.
enum class Var { K, Z, A, B, NCap };

const char* var_name(Var v);

// Immutable expression tree over exact rationals.  Trees are built by the
// factory functions below or by parse_expr, shared freely, and evaluated
// with eval().  The textual grammar (used in scheme files) is
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := base ('^' integer)?
//   base   := integer | 'k' | 'z' | 'a' | 'b' | 'N' | '(' expr ')' | '-' base
//           | 'H' '(' integer ',' expr ')' | 'binom' '(' expr ',' expr ')'
//
// H(r, n) is the generalized harmonic number sum_{j<=n} j^-r and
// binom(n, k) the binomial coefficient (zero when k > n); both require
// integer arguments at evaluation time.  Note that per this grammar unary
// minus binds tighter than '^': "-k^2" is (-k)^2.  The renderer always
// parenthesizes enough that render/parse round-trips are exact.
class Expr {
public:
    enum class Op {
        Literal,
        Variable,
        Add,
        Sub,
        Mul,
        Div,
        Pow,
        Neg,
        Harmonic,
        Binomial,
    };

    using Ptr = std::shared_ptr<const Expr>;

    Op op() const { return op_; }
    const Rational& literal() const { return literal_; }
    Var variable() const { return var_; }
    long exponent() const { return exponent_; }
    int harmonic_order() const { return harmonic_order_; }
    const Ptr& lhs() const { return lhs_; }
    const Ptr& rhs() const { return rhs_; }

    // Factories.
    static Ptr lit(long n);
    static Ptr lit(const Rational& q);
    static Ptr var(Var v);
    static Ptr add(Ptr a, Ptr b);
    static Ptr sub(Ptr a, Ptr b);
    static Ptr mul(Ptr a, Ptr b);
    static Ptr div(Ptr a, Ptr b);
    static Ptr pow(Ptr base, long e);
    static Ptr neg(Ptr a);
    static Ptr harmonic_of(int order, Ptr n);
    static Ptr binomial_of(Ptr n, Ptr k);

private:
    Expr() = default;

    Op op_ = Op::Literal;
    Rational literal_;
    Var var_ = Var::K;
    long exponent_ = 0;
    int harmonic_order_ = 0;
    Ptr lhs_;
    Ptr rhs_;
};

// Variable values for evaluation; unbound variables raise DomainError when
// referenced.
struct Bindings {
    std::optional<Rational> k;
    std::optional<Rational> z;
    std::optional<Rational> a;
    std::optional<Rational> b;
    std::optional<Rational> n_cap;

    const std::optional<Rational>& lookup(Var v) const;
    void set(Var v, Rational value);
};

Rational eval(const Expr::Ptr& e, const Bindings& bindings);

// Structural equality (same shape, same payloads).
bool equal(const Expr::Ptr& a, const Expr::Ptr& b);

// Render to the grammar above; parse_expr(render(e)) is structurally equal
// to e.
std::string render(const Expr::Ptr& e);

// Parse a complete expression; trailing garbage is an error.  line/column
// offsets shift reported positions, so embedded expressions (scheme files)
// can point errors at the enclosing document.
Expr::Ptr parse_expr(const std::string& text, int line = 1,
                     int column_offset = 0);

}  // namespace gosper
