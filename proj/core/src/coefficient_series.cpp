// Closed coefficient series mirroring the stacked binomial-sum products.
// Each partial sum over k = 1..p equals the corresponding component of the
// p-factor matrix product, which the tests check exactly.

#include <utility>

#include "gosper/errors.hpp"
#include "gosper/schemes.hpp"
#include "gosper/symfun.hpp"

namespace gosper {

namespace {

void check_component(int n) {
    if (n < 0) throw DomainError("component index must be >= 0");
}

void check_terms(long terms) {
    if (terms < 0) throw DomainError("term count must be >= 0");
}

Rational central_binomial(long k) {
    return Rational(binomial(BigInt(2 * k), BigInt(k)));
}

}  // namespace

std::vector<Rational> koecher_coefficient_partials(int n, long terms) {
    check_component(n);
    check_terms(terms);
    std::vector<Rational> out;
    out.reserve(static_cast<size_t>(terms));
    SymState state(2, n);  // elementary sums of 1/j^2 over j = 1..k-1
    Rational sum(0);
    int sign_k = 1;  // (-1)^{k-1}
    for (long k = 1; k <= terms; ++k) {
        Rational bracket(0);
        for (int j = 0; j <= n; ++j) {
            int parity = ((n - j) % 2 == 0) ? 1 : -1;
            Rational piece = Rational(parity) * state.e(n - j) /
                             Rational(k).pow(2 * j);
            bracket += (j == 0 ? Rational(5, 2) : Rational(2)) * piece;
        }
        sum += Rational(sign_k) * bracket /
               (Rational(k).pow(3) * central_binomial(k));
        out.push_back(sum);
        state.advance();
        sign_k = -sign_k;
    }
    return out;
}

Rational koecher_coefficient_series(int n, long terms) {
    check_component(n);
    check_terms(terms);
    auto partials = koecher_coefficient_partials(n, terms);
    return partials.empty() ? Rational(0) : partials.back();
}

std::vector<Rational> borwein_coefficient_partials(int n, long terms) {
    check_component(n);
    check_terms(terms);
    std::vector<Rational> out;
    out.reserve(static_cast<size_t>(terms));
    SymState elem(2, n);  // e_l of 1/j^2 over j = 1..k-1
    SymState hom(2, n);   // h_m of 1/j^2 over j = 1..k
    Rational sum(0);
    for (long k = 1; k <= terms; ++k) {
        hom.advance();
        Rational bracket(0);
        Rational power(1);  // (-4)^l
        for (int l = 0; l <= n; ++l) {
            bracket += power * elem.e(l) * hom.h(n - l);
            power *= Rational(-4);
        }
        sum += Rational(3) * bracket /
               (Rational(k).pow(2) * central_binomial(k));
        out.push_back(sum);
        elem.advance();
    }
    return out;
}

Rational borwein_coefficient_series(int n, long terms) {
    check_component(n);
    check_terms(terms);
    auto partials = borwein_coefficient_partials(n, terms);
    return partials.empty() ? Rational(0) : partials.back();
}

Rational borwein_bracket(int n, long k) {
    check_component(n);
    if (k < 1) throw DomainError("factor index must be >= 1");
    SymState elem(2, n);
    elem.advance_to(k);  // covers j = 1..k-1
    SymState hom(2, n);
    hom.advance_to(k + 1);  // covers j = 1..k
    Rational bracket(0);
    Rational power(1);
    for (int l = 0; l <= n; ++l) {
        bracket += power * elem.e(l) * hom.h(n - l);
        power *= Rational(-4);
    }
    return bracket;
}

namespace {

// Shared Leschiner walk; the j >= 1 corrections enter with `correction`
// (2 for the product-matching series, 6 for the published variant).
std::vector<Rational> leschiner_walk(int n, long terms,
                                     const Rational& correction) {
    std::vector<Rational> out;
    out.reserve(static_cast<size_t>(terms));
    SymState state(2, n);
    Rational sum(0);
    for (long k = 1; k <= terms; ++k) {
        Rational bracket(0);
        for (int j = 0; j <= n; ++j) {
            int parity = ((n - j) % 2 == 0) ? 1 : -1;
            Rational piece = Rational(parity) * state.e(n - j) /
                             Rational(k).pow(2 * j);
            bracket += (j == 0 ? Rational(3, 2) : correction) * piece;
        }
        sum += bracket / (Rational(k).pow(2) * central_binomial(k));
        out.push_back(sum);
        state.advance();
    }
    return out;
}

}  // namespace

std::vector<Rational> leschiner_coefficient_partials(int n, long terms) {
    check_component(n);
    check_terms(terms);
    return leschiner_walk(n, terms, Rational(2));
}

Rational leschiner_coefficient_series(int n, long terms) {
    check_component(n);
    check_terms(terms);
    auto partials = leschiner_coefficient_partials(n, terms);
    return partials.empty() ? Rational(0) : partials.back();
}

LeschinerComparison leschiner_formula_comparison(int n, long terms) {
    check_component(n);
    check_terms(terms);
    LeschinerComparison cmp{Rational(0), Rational(0), true};
    auto derived = leschiner_walk(n, terms, Rational(2));
    auto variant = leschiner_walk(n, terms, Rational(6));
    if (!derived.empty()) cmp.derived = derived.back();
    if (!variant.empty()) cmp.variant6 = variant.back();
    cmp.agree = cmp.derived == cmp.variant6;
    return cmp;
}

}  // namespace gosper
