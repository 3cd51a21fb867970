#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gosper/banded.hpp"
#include "gosper/constants.hpp"
#include "gosper/expr.hpp"
#include "gosper/gosper_matrix.hpp"
#include "gosper/numeric.hpp"

namespace gosper {

// A product scheme: the k-th factor of the infinite (or finite) matrix
// product is the (dim+1)x(dim+1) upper-unitriangular block
//
//     [ alpha(k) I + beta(k) J   u(k) ]
//     [           0               1   ]
//
// with all entries given as expressions in k and the named parameters.
// u holds the column bottom-up: u[0] is the entry adjacent to the constant
// row, matching BandFactor.  Component ell (1-based from the bottom)
// converges to targets[ell-1].
struct SchemeDef {
    std::string name;
    std::string summary;
    int dim = 1;
    ParamMap params;
    Expr::Ptr alpha;
    Expr::Ptr beta;  // null iff dim == 1
    std::vector<Expr::Ptr> u;
    std::vector<ConstantDescriptor> targets;
    // Finite products stop after a fixed number of factors instead of
    // converging: either a literal count or the current value of the Ncap
    // parameter.
    bool finite = false;
    bool finite_by_param = false;
    long finite_terms = 0;
};

// Number of factors a finite scheme multiplies, nullopt for infinite ones.
std::optional<long> scheme_term_count(const SchemeDef& scheme);

// Variable bindings for evaluating the scheme's expressions at index k.
Bindings scheme_bindings(const SchemeDef& scheme, long k);

// Exact k-th factor.  The float overload evaluates exactly and rounds each
// entry once to `precision` bits.
BandFactor factor_at(const SchemeDef& scheme, long k);
BandFactor factor_at(const SchemeDef& scheme, long k, long precision);

// The k-th factor as a full (dim+1)x(dim+1) matrix (exact entries).
GosperMatrix matrix_at(const SchemeDef& scheme, long k);

// Structural equality: same shape, parameters, expressions, targets.
bool equal(const SchemeDef& a, const SchemeDef& b);

// Overrides parameter values; every name must already exist in the scheme.
void apply_params(SchemeDef& scheme, const ParamMap& overrides);

// Rejects malformed schemes: missing pieces, a beta on a 1-band scheme,
// parameter-dependent blowups (vanishing alpha or a pole in some entry at a
// concrete index, reported with that index), and targets outside their
// domain.  Finite schemes are checked over their whole range, infinite ones
// over a leading window plus the targets' exact domain tests.
void validate(const SchemeDef& scheme);

// Line-oriented scheme file format (see render_scheme for the canonical
// layout); parse errors carry line/column.
SchemeDef parse_scheme(const std::string& text);
std::string render_scheme(const SchemeDef& scheme);

// Built-in catalog.
const std::vector<SchemeDef>& catalog();
const SchemeDef* find_scheme(const std::string& name);

// Catalog constructors.  `order` counts the stacked components: koecher(N)
// targets zeta(3..2N+1), borwein(N) targets zeta(2..2N) for N <= 3,
// leschiner(N) targets eta(2..2N) for N <= 2.
SchemeDef make_koecher(int order);
SchemeDef make_borwein(int order);
SchemeDef make_leschiner(int order);
SchemeDef make_markov_hurwitz();
SchemeDef make_tauraso();
SchemeDef make_tauraso_quartic();
SchemeDef make_amdeberhan_zeilberger();
SchemeDef make_amdeberhan_cubic();
SchemeDef make_harmonic3_finite();

// Closed coefficient series equivalent to the matrix products: partial sums
// over k = 1..terms, exact.  `partials` variants return every prefix sum
// (index p-1 holds the p-term sum) so partial sums can be compared against
// the accumulator term by term.
//
// Koecher component n (n = 0 targets zeta(3)):
//   zeta(2n+3) = (5/2) S_0 + 2 sum_{j=1}^n S_j with
//   S_j = sum_k (-1)^{k-1} (-1)^{n-j} e_{n-j}^(2)(k-1) / (k^{2j+3} C(2k,k)).
Rational koecher_coefficient_series(int n, long terms);
std::vector<Rational> koecher_coefficient_partials(int n, long terms);

// Borwein component n (n = 0 targets zeta(2)):
//   zeta(2n+2) = 3 sum_k (1/(k^2 C(2k,k)))
//                  sum_{l+m=n} (-4)^l e_l^(2)(k-1) h_m^(2)(k+1).
Rational borwein_coefficient_series(int n, long terms);
std::vector<Rational> borwein_coefficient_partials(int n, long terms);
// The inner bracket at index k (the summand without 3/(k^2 C(2k,k))),
// for checking against its expanded harmonic-sum forms.
Rational borwein_bracket(int n, long k);

// Leschiner component n (n = 0 targets eta(2)):
//   eta(2n+2) = (3/2) S_0 + 2 sum_{j=1}^n S_j with
//   S_j = sum_k (-1)^{n-j} e_{n-j}^(2)(k-1) / (k^{2j+2} C(2k,k)).
Rational leschiner_coefficient_series(int n, long terms);
std::vector<Rational> leschiner_coefficient_partials(int n, long terms);

// A published variant of the Leschiner series puts coefficient 6 (not 2) on
// the j >= 1 corrections.  Both truncations side by side, for the record.
struct LeschinerComparison {
    Rational derived;   // coefficient 2 form (matches the matrix product)
    Rational variant6;  // coefficient 6 form
    bool agree;         // exact equality of the two truncations
};
LeschinerComparison leschiner_formula_comparison(int n, long terms);

}  // namespace gosper
