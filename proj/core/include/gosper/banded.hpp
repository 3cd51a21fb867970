#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gosper/numeric.hpp"

namespace gosper {

// One factor [[A_k, u_k], [0, 1]] whose A block is the banded upper
// triangular Toeplitz matrix alpha*I + beta*J, with J the nilpotent shift
// (ones on the first superdiagonal).  The u entries are stored bottom-up:
// u[0] is the *bottom* entry of the column, u[dim-1] the top.  This is the
// natural order for the accumulator, whose component(1) - the bottom entry
// of the running product's u-column - converges first.
struct BandFactor {
    Scalar alpha;
    Scalar beta;              // ignored when dim == 1
    std::vector<Scalar> u;    // u[ell-1] = component ell, bottom-up
};

// Streaming evaluator for the u-column of the infinite product of band
// factors.  After p calls to accumulate, component(ell) equals entry
// (N - ell) of the u-column of M_1 * ... * M_p, i.e. the p-term partial sum
//
//   v^(ell) = sum_{q<=p} (alpha_1...alpha_{q-1})
//             sum_{m=0}^{ell-1} e_m(beta_j/alpha_j : j < q) u_q^(ell-m),
//
// maintained with O(N^2) scalar ops per term and O(N) state: the running
// prefix product of alphas and the elementary symmetric functions e_m of the
// ratios beta_j/alpha_j seen so far.  The update order is load-bearing:
// a term consumes the prefix/e-state of the factors *before* it, so the
// contribution is added first and the state advanced afterwards.
class BandAccumulator {
public:
    // Exact rational accumulation.
    explicit BandAccumulator(int dim);
    // Floating accumulation at the given MPFR precision.
    BandAccumulator(int dim, long precision);

    // Throws DomainError on a zero alpha when dim > 1 (the beta/alpha ratios
    // stop existing).  In one band a zero alpha is legal: that factor's A
    // block is the zero scalar, so the prefix collapses to zero, further
    // factors contribute nothing, and the components hold the exact value of
    // the full infinite product.
    void accumulate(const BandFactor& factor);

    int dim() const { return dim_; }
    long terms() const { return terms_; }

    // Partial sum for component ell, ell in [1, dim]; ell = 1 is the bottom
    // entry (fastest converging), ell = dim the top.
    const Scalar& component(int ell) const;

    // alpha_1 * ... * alpha_terms, the diagonal of the accumulated product.
    const Scalar& alpha_prefix() const;

    // e_m of {beta_j/alpha_j : j <= terms} for m in [0, dim-1]; these are the
    // J-expansion coefficients of the product of A blocks divided by the
    // alpha prefix.
    const Scalar& ratio_elem_sym(int m) const;

private:
    Scalar make_scalar(long value) const;

    int dim_;
    long terms_ = 0;
    bool floating_ = false;
    long precision_ = 0;
    Scalar prefix_;               // product of alphas consumed so far
    std::vector<Scalar> esyms_;   // e_0..e_{dim-1} of the beta/alpha ratios
    std::vector<Scalar> v_;       // v_[ell-1] = component ell
};

// Dense N x N product of the A blocks of the given factors, row-major, for
// cross-checking the banded algebra against generic matrix multiplication.
// The product of band matrices alpha_i I + beta_i J equals
// (prod alpha_i) * sum_m e_m(beta_j/alpha_j) J^m truncated at J^(N-1).
std::vector<Scalar> band_product(std::span<const BandFactor> factors, int dim);

// A-priori accuracy estimate for the current state of an accumulator, given
// the factor it would consume next.  The tail after p terms is bounded by
// |t_{p+1}| / (1 - r) when the alpha ratio magnitudes stay below r < 1, where
// t_{p+1} is the next term's contribution; digits_per_term is
// -log10 |alpha_{p+1}|, the asymptotic decimal gain per extra factor.
struct ErrorEstimate {
    double digits_per_term;
    // Per component (index ell-1): log10 of the absolute tail bound, and the
    // estimated count of correct significant digits of component(ell).
    // A bound is absent when the next term vanishes or |alpha| >= 1.
    std::vector<std::optional<double>> tail_log10;
    std::vector<std::optional<double>> estimated_digits;
    // True when the accumulated alpha prefix is exactly zero: a vanished A
    // block kills every later contribution, so the partial product already
    // equals the full one and the tail bounds above are moot.
    bool exact = false;
};

ErrorEstimate error_estimate(const BandAccumulator& acc,
                             const BandFactor& next);

}  // namespace gosper
