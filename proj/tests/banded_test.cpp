#include <doctest.h>

#include <gosper/banded.hpp>
#include <gosper/reference.hpp>
#include <gosper/schemes.hpp>
#include <gosper/symfun.hpp>

#include <cmath>
#include <vector>

using namespace gosper;

namespace {

BandFactor plain(long alpha, long beta, std::vector<long> u) {
    BandFactor f;
    f.alpha = Scalar(Rational(alpha));
    f.beta = Scalar(Rational(beta));
    for (long v : u) f.u.emplace_back(Rational(v));
    return f;
}

}  // namespace

TEST_CASE("band product expands alpha I + beta J") {
    std::vector<BandFactor> one = {plain(2, 3, {0, 0})};
    std::vector<Scalar> a = band_product(one, 2);
    CHECK(a[0].rational() == Rational(2));
    CHECK(a[1].rational() == Rational(3));
    CHECK(a[2].rational() == Rational(0));
    CHECK(a[3].rational() == Rational(2));

    std::vector<BandFactor> two = {plain(2, 3, {0, 0}), plain(5, 7, {0, 0})};
    a = band_product(two, 2);
    CHECK(a[0].rational() == Rational(10));
    CHECK(a[1].rational() == Rational(29));  // 2*7 + 3*5
    CHECK(a[3].rational() == Rational(10));
}

TEST_CASE("accumulator equals the dense matrix product on every scheme") {
    for (const SchemeDef& sch : catalog()) {
        CAPTURE(sch.name);
        long p = 25;
        if (auto cap = scheme_term_count(sch)) p = std::min(p, *cap);

        BandAccumulator acc(sch.dim);
        std::vector<GosperMatrix> mats;
        std::vector<BandFactor> factors;
        for (long k = 1; k <= p; ++k) {
            acc.accumulate(factor_at(sch, k));
            mats.push_back(matrix_at(sch, k));
            factors.push_back(factor_at(sch, k));
        }
        GosperMatrix dense = finite_product(mats, sch.dim);

        for (int ell = 1; ell <= sch.dim; ++ell)
            CHECK(equal(acc.component(ell), dense.u(sch.dim - ell)));
        CHECK(equal(acc.alpha_prefix(), dense.a(0, 0)));

        // The A block itself: dense row 0 carries prefix * e_m at column m.
        std::vector<Scalar> a = band_product(factors, sch.dim);
        for (int i = 0; i < sch.dim; ++i)
            for (int j = 0; j < sch.dim; ++j) {
                CHECK(equal(a[static_cast<size_t>(i) * sch.dim + j],
                            dense.a(i, j)));
            }
        for (int m = 0; m < sch.dim; ++m)
            CHECK(equal(mul(acc.alpha_prefix(), acc.ratio_elem_sym(m)),
                        dense.a(0, m)));
    }
}

TEST_CASE("ratio symmetric functions close over 1/k^2 for the cubic scheme") {
    // beta/alpha = -1/k^2 there, so e_m of the ratios is (-1)^m e_m(1/j^2).
    SchemeDef sch = make_koecher(3);
    BandAccumulator acc(sch.dim);
    for (long p = 1; p <= 40; ++p) {
        acc.accumulate(factor_at(sch, p));
        for (int m = 0; m < sch.dim; ++m) {
            Rational expect = elem_sym(m, 2, p + 1);
            if (m % 2 == 1) expect = -expect;
            CHECK(acc.ratio_elem_sym(m).rational() == expect);
        }
    }
}

TEST_CASE("alpha prefix contracts under the float backend") {
    SchemeDef sch = make_koecher(1);
    BandAccumulator acc(1, 256);
    double last = 0;
    for (long p = 1; p <= 300; ++p) {
        acc.accumulate(factor_at(sch, p, 256));
        double mag = log10_abs(acc.alpha_prefix());
        if (p > 1) CHECK(mag < last);
        last = mag;
    }
    CHECK(acc.terms() == 300);
}

TEST_CASE("tail estimate bounds the true remainder") {
    SchemeDef sch = make_koecher(1);
    BandAccumulator acc(1);
    for (long k = 1; k <= 30; ++k) acc.accumulate(factor_at(sch, k));
    ErrorEstimate est = error_estimate(acc, factor_at(sch, 31));

    CHECK(est.digits_per_term == doctest::Approx(0.602).epsilon(0.05));
    REQUIRE(est.tail_log10[0].has_value());
    REQUIRE(est.estimated_digits[0].has_value());

    BigFloat truth = zeta_ref(3, 60);
    BigFloat err =
        (to_float(acc.component(1), 256) - truth).abs();
    double log_err = err.log10_abs();
    CHECK(*est.tail_log10[0] >= log_err);        // a genuine bound
    CHECK(*est.tail_log10[0] <= log_err + 2.0);  // and not a wild one
}

TEST_CASE("estimates degrade gracefully") {
    BandAccumulator fresh(1);
    ErrorEstimate none = error_estimate(fresh, plain(1, 0, {1}));
    CHECK(!none.tail_log10[0].has_value());
    CHECK(!none.estimated_digits[0].has_value());

    BandAccumulator acc(1);
    acc.accumulate(plain(2, 0, {1}));
    ErrorEstimate grow = error_estimate(acc, plain(2, 0, {1}));
    CHECK(grow.digits_per_term == doctest::Approx(-std::log10(2.0)));
    CHECK(!grow.tail_log10[0].has_value());
}

TEST_CASE("zero alpha annihilates in one band and is rejected otherwise") {
    // One band: the zero-A factor still contributes its u with the old
    // prefix, then freezes the product; later factors change nothing.
    BandAccumulator acc(1);
    acc.accumulate(plain(3, 0, {1}));   // + 1
    acc.accumulate(plain(0, 0, {5}));   // + 3*5, prefix -> 0
    CHECK(acc.component(1).rational() == Rational(16));
    CHECK(acc.alpha_prefix().is_zero());
    acc.accumulate(plain(7, 0, {11}));  // dead tail
    CHECK(acc.component(1).rational() == Rational(16));
    CHECK(acc.alpha_prefix().is_zero());

    // The frozen value matches the dense matrix product with the same
    // zero-A factor in the chain.
    auto one_by_one = [](long alpha, long u) {
        return GosperMatrix(1, {Scalar(Rational(alpha))},
                            {Scalar(Rational(u))});
    };
    std::vector<GosperMatrix> mats = {one_by_one(3, 1), one_by_one(0, 5),
                                      one_by_one(7, 11)};
    GosperMatrix dense = finite_product(mats, 1);
    CHECK(dense.u(0).rational() == Rational(16));
    CHECK(dense.a(0, 0).is_zero());

    // And the estimate reports an exactly-zero tail.
    ErrorEstimate est = error_estimate(acc, plain(7, 0, {11}));
    CHECK(est.exact);
    CHECK(!est.tail_log10[0].has_value());

    // Two or more bands: the beta/alpha ratios stop existing, so the
    // accumulator refuses the factor.
    BandAccumulator wide(2);
    wide.accumulate(plain(3, 1, {1, 1}));
    CHECK_THROWS_WITH_AS(wide.accumulate(plain(0, 1, {1, 1})),
                         "factor with zero alpha after 1 terms", DomainError);
}
