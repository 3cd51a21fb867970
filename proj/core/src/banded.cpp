#include "gosper/banded.hpp"

#include <cmath>

namespace gosper {

BandAccumulator::BandAccumulator(int dim) : dim_(dim) {
    if (dim < 1) throw DimensionError("accumulator dimension must be >= 1");
    prefix_ = Scalar(Rational(1));
    esyms_.assign(static_cast<size_t>(dim), Scalar(Rational(0)));
    esyms_[0] = Scalar(Rational(1));
    v_.assign(static_cast<size_t>(dim), Scalar(Rational(0)));
}

BandAccumulator::BandAccumulator(int dim, long precision)
    : dim_(dim), floating_(true), precision_(precision) {
    if (dim < 1) throw DimensionError("accumulator dimension must be >= 1");
    prefix_ = Scalar(BigFloat(1, precision));
    esyms_.assign(static_cast<size_t>(dim), Scalar(BigFloat(0L, precision)));
    esyms_[0] = Scalar(BigFloat(1, precision));
    v_.assign(static_cast<size_t>(dim), Scalar(BigFloat(0L, precision)));
}

Scalar BandAccumulator::make_scalar(long value) const {
    return floating_ ? Scalar(BigFloat(value, precision_))
                     : Scalar(Rational(value));
}

void BandAccumulator::accumulate(const BandFactor& factor) {
    if (factor.u.size() != static_cast<size_t>(dim_))
        throw DimensionError("factor u-vector has wrong size");
    // A zero alpha is only representable in one band: there the A block of
    // this factor is the zero scalar, the prefix collapses to zero, and the
    // components freeze exactly (the tail past this factor is identically
    // zero).  With more bands the A block degenerates to beta*J, which the
    // prefix-times-symmetric-functions representation cannot express.
    if (factor.alpha.is_zero() && dim_ > 1)
        throw DomainError("factor with zero alpha after " +
                          std::to_string(terms_) + " terms");

    // Contribution of this factor: for each component ell, the prefix of
    // alphas times the J-expansion coefficients of the preceding A blocks
    // contracted with this factor's u entries.
    for (int ell = dim_; ell >= 1; --ell) {
        Scalar contrib = make_scalar(0);
        for (int m = 0; m <= ell - 1; ++m)
            contrib = add(contrib,
                          mul(esyms_[static_cast<size_t>(m)],
                              factor.u[static_cast<size_t>(ell - 1 - m)]));
        v_[static_cast<size_t>(ell - 1)] =
            add(v_[static_cast<size_t>(ell - 1)], mul(prefix_, contrib));
    }

    // Advance the state to include this factor.
    prefix_ = mul(prefix_, factor.alpha);
    if (dim_ > 1) {
        Scalar ratio = div(factor.beta, factor.alpha);
        for (int m = dim_ - 1; m >= 1; --m)
            esyms_[static_cast<size_t>(m)] =
                add(esyms_[static_cast<size_t>(m)],
                    mul(esyms_[static_cast<size_t>(m) - 1], ratio));
    }
    ++terms_;
}

const Scalar& BandAccumulator::component(int ell) const {
    if (ell < 1 || ell > dim_)
        throw DimensionError("component index out of range");
    return v_[static_cast<size_t>(ell - 1)];
}

const Scalar& BandAccumulator::alpha_prefix() const { return prefix_; }

const Scalar& BandAccumulator::ratio_elem_sym(int m) const {
    if (m < 0 || m >= dim_)
        throw DimensionError("symmetric function order out of range");
    return esyms_[static_cast<size_t>(m)];
}

std::vector<Scalar> band_product(std::span<const BandFactor> factors, int dim) {
    if (dim < 1) throw DimensionError("matrix dimension must be >= 1");
    // Multiply out (alpha I + beta J) factors as dense matrices.
    std::vector<Scalar> acc(static_cast<size_t>(dim) * dim, Scalar(Rational(0)));
    for (int i = 0; i < dim; ++i)
        acc[static_cast<size_t>(i) * dim + i] = Scalar(Rational(1));
    for (const BandFactor& f : factors) {
        std::vector<Scalar> next(static_cast<size_t>(dim) * dim,
                                 Scalar(Rational(0)));
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
                // (acc * (alpha I + beta J))_{ij} = acc_{ij} alpha
                //                                 + acc_{i,j-1} beta.
                Scalar val = mul(acc[static_cast<size_t>(i) * dim + j], f.alpha);
                if (j > 0 && dim > 1)
                    val = add(val, mul(acc[static_cast<size_t>(i) * dim + j - 1],
                                       f.beta));
                next[static_cast<size_t>(i) * dim + j] = std::move(val);
            }
        }
        acc = std::move(next);
    }
    return acc;
}

ErrorEstimate error_estimate(const BandAccumulator& acc,
                             const BandFactor& next) {
    const int dim = acc.dim();
    if (next.u.size() != static_cast<size_t>(dim))
        throw DimensionError("factor u-vector has wrong size");

    ErrorEstimate est;
    double log_r = log10_abs(next.alpha);
    est.digits_per_term = -log_r;
    est.tail_log10.assign(static_cast<size_t>(dim), std::nullopt);
    est.estimated_digits.assign(static_cast<size_t>(dim), std::nullopt);
    // A zero prefix means some factor's A block vanished: every later term
    // carries that zero, the tail is identically zero, and the components
    // are already the exact infinite product.
    if (acc.terms() > 0 && acc.alpha_prefix().is_zero()) {
        est.exact = true;
        return est;
    }
    // No estimate before the first term; and the geometric tail comparison
    // needs a contraction, so without |alpha| < 1 the bound is unavailable
    // (finite schemes never need it).
    if (acc.terms() == 0 || !(log_r < 0)) return est;
    double r = std::pow(10.0, log_r);
    double log_geom = -std::log10(1.0 - r);

    for (int ell = 1; ell <= dim; ++ell) {
        // The term the accumulator would add next.
        Scalar contrib =
            mul(acc.ratio_elem_sym(0), next.u[static_cast<size_t>(ell - 1)]);
        for (int m = 1; m <= ell - 1; ++m)
            contrib = add(contrib, mul(acc.ratio_elem_sym(m),
                                       next.u[static_cast<size_t>(ell - 1 - m)]));
        Scalar term = mul(acc.alpha_prefix(), contrib);
        if (term.is_zero()) continue;
        double tail = log10_abs(term) + log_geom;
        est.tail_log10[static_cast<size_t>(ell - 1)] = tail;
        const Scalar& value = acc.component(ell);
        if (!value.is_zero())
            est.estimated_digits[static_cast<size_t>(ell - 1)] =
                log10_abs(value) - tail;
    }
    return est;
}

}  // namespace gosper
