#pragma once

#include <map>
#include <string>

#include "gosper/numeric.hpp"

namespace gosper {

// Named scheme parameters and their exact values.
using ParamMap = std::map<std::string, Rational>;

// An argument of a target constant: either a fixed rational or a reference
// to a named scheme parameter ("z", "a", "b", "Ncap") resolved against the
// scheme's current parameter values.  Keeping the reference symbolic lets
// parameter overrides retarget the oracle consistently.
class ConstArg {
public:
    ConstArg() : symbolic_(false), value_(0) {}
    static ConstArg literal(Rational v);
    static ConstArg ref(std::string param);

    bool symbolic() const { return symbolic_; }
    const std::string& param() const { return param_; }
    Rational resolve(const ParamMap& params) const;
    std::string to_string() const;

    friend bool operator==(const ConstArg& a, const ConstArg& b) {
        if (a.symbolic_ != b.symbolic_) return false;
        return a.symbolic_ ? a.param_ == b.param_ : a.value_ == b.value_;
    }
    friend bool operator!=(const ConstArg& a, const ConstArg& b) {
        return !(a == b);
    }

private:
    bool symbolic_;
    Rational value_;
    std::string param_;
};

// What a scheme component converges to.
enum class ConstantKind {
    Zeta,            // zeta(s)
    Eta,             // eta(s) = alternating zeta
    Hurwitz,         // hurwitz(s, z) = sum_{n>=1} (n+z)^-s
    Tauraso,         // tauraso(a, b) = sum 2/(n^2 - a n - b^2)
    TaurasoQuartic,  // tauraso4(a, b) = sum 4n/(n^4 - a^2 n^2 - b^4)
    HarmonicCubic,   // h3(N) = H_N^(3), exact rational
    ScaledZeta,      // scaled_zeta(s, q) = q * zeta(s)
};

// Descriptor with a fully substituted parameter set; what `reference`
// evaluates.
struct ResolvedConstant {
    ConstantKind kind = ConstantKind::Zeta;
    int s = 0;        // zeta/eta/hurwitz/scaled_zeta order
    Rational z;       // hurwitz shift
    Rational a, b;    // tauraso parameters
    long n_cap = 0;   // harmonic cutoff
    Rational factor;  // scaled_zeta multiplier

    std::string to_string() const;
};

// Descriptor as written in a scheme definition; arguments may reference
// scheme parameters.  Text forms: zeta(3), eta(2), hurwitz(3,z),
// tauraso(a,b), tauraso4(1/3,1/2), h3(Ncap), scaled_zeta(3,4).
struct ConstantDescriptor {
    ConstantKind kind = ConstantKind::Zeta;
    int s = 0;
    ConstArg arg1;  // hurwitz z; tauraso a; h3 N; scaled_zeta factor
    ConstArg arg2;  // tauraso b

    ResolvedConstant resolve(const ParamMap& params) const;
    std::string to_string() const;
    // Parses the text form; `line`/`column_offset` locate errors in an
    // enclosing document.
    static ConstantDescriptor parse(const std::string& text, int line = 1,
                                    int column_offset = 0);

    friend bool operator==(const ConstantDescriptor& x,
                           const ConstantDescriptor& y) {
        return x.kind == y.kind && x.s == y.s && x.arg1 == y.arg1 &&
               x.arg2 == y.arg2;
    }
    friend bool operator!=(const ConstantDescriptor& x,
                           const ConstantDescriptor& y) {
        return !(x == y);
    }
};

// Checks a resolved constant is inside the computable domain (s >= 2 where
// applicable, Hurwitz shift off the poles, Tauraso denominators nonzero for
// every integer index); throws DomainError naming the offence.  The Tauraso
// check is exact: a denominator k^2 - a k - b^2 (resp. the quartic) has an
// integer root k >= 1 iff its discriminant is a rational square with the
// right integrality, and the error names that k.
void check_computable(const ResolvedConstant& c);

}  // namespace gosper
