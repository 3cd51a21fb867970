#include <doctest.h>

#include <gosper/reference.hpp>
#include <gosper/symfun.hpp>

#include <cmath>

using namespace gosper;

namespace {

// log10 of |got - want|; very negative means agreement.
double err_log10(const BigFloat& got, const BigFloat& want) {
    BigFloat diff = got - want;
    return diff.is_zero() ? -1e9 : diff.log10_abs();
}

}  // namespace

TEST_CASE("Bernoulli numbers") {
    CHECK(bernoulli(0) == Rational(1));
    CHECK(bernoulli(1) == Rational(-1, 2));
    CHECK(bernoulli(2) == Rational(1, 6));
    CHECK(bernoulli(3) == Rational(0));
    CHECK(bernoulli(12) == Rational(-691, 2730));
    CHECK(bernoulli(30) ==
          Rational(BigInt("8615841276005"), BigInt("14322")));
}

TEST_CASE("frozen reference digits") {
    CHECK(to_decimal(zeta_ref(2, 10), 10) == "1.644934067");
    CHECK(to_decimal(zeta_ref(2, 11), 11) == "1.6449340668");
    CHECK(to_decimal(zeta_ref(3, 15), 15) == "1.20205690315959");
    CHECK(to_decimal(digamma_ref(Rational(1), 10), 10) == "-0.5772156649");
    CHECK(to_decimal(digamma_ref(Rational(1, 2), 11), 11) == "-1.9635100260");
    CHECK(to_decimal(hurwitz_ref(3, Rational(1), 12), 12) == "0.202056903160");
    CHECK(to_decimal(hurwitz_ref(2, Rational(1, 2), 10), 10) ==
          "0.9348022005");
    CHECK(to_decimal(tauraso_closed_form(Rational(0), Rational(0), 11), 11) ==
          "3.2898681337");
    CHECK(to_decimal(pi_ref(20), 20) == "3.1415926535897932385");
}

TEST_CASE("independent routes agree") {
    const int d = 60;
    const long prec = 256;
    BigFloat pi = pi_ref(d);
    CHECK(err_log10(zeta_ref(2, d), pi * pi / BigFloat(6, prec)) < -(d - 3));
    CHECK(err_log10(eta_ref(2, d), pi * pi / BigFloat(12, prec)) < -(d - 3));
    CHECK(err_log10(eta_ref(4, d),
                    pi.pow(4) * BigFloat(Rational(7, 720), prec)) < -(d - 3));
    CHECK(err_log10(hurwitz_ref(2, Rational(1, 2), d),
                    pi * pi / BigFloat(2, prec) - BigFloat(4, prec)) <
          -(d - 3));
    CHECK(err_log10(hurwitz_ref(3, Rational(0), d), zeta_ref(3, d)) <
          -(d - 3));
    // Shift identity: sum over n >= 1 of (n+1)^-3 drops the n = 1 term.
    CHECK(err_log10(hurwitz_ref(3, Rational(1), d),
                    zeta_ref(3, d) - BigFloat(1, prec)) < -(d - 3));

    BigFloat gamma = euler_gamma_ref(d);
    BigFloat ln2 = BigFloat(2, prec).log_abs();
    CHECK(err_log10(digamma_ref(Rational(1, 4), d),
                    -gamma - BigFloat(3, prec) * ln2 - pi / BigFloat(2, prec)) <
          -(d - 3));
    CHECK(err_log10(digamma_ref(Rational(1, 2), d),
                    -gamma - BigFloat(2, prec) * ln2) < -(d - 3));
    // The float-argument overload agrees with the exact one.
    CHECK(err_log10(digamma_ref(BigFloat(Rational(1, 3), 512), 50),
                    digamma_ref(Rational(1, 3), 50)) < -45);
}

TEST_CASE("negative Hurwitz shifts") {
    // sum (n - 3/2)^-3 = -8 + sum (m - 1/2)^-3 = 7 zeta(3) - 8.
    const int d = 50;
    CHECK(err_log10(hurwitz_ref(3, Rational(-3, 2), d),
                    BigFloat(7, 256) * zeta_ref(3, d) - BigFloat(8, 256)) <
          -(d - 4));
    CHECK_THROWS_AS(hurwitz_ref(3, Rational(-2), 20), DomainError);
    CHECK_THROWS_AS(digamma_ref(Rational(0), 20), DomainError);
    CHECK_THROWS_AS(digamma_ref(Rational(-5), 20), DomainError);
    CHECK_THROWS_AS(zeta_ref(1, 20), DomainError);
}

TEST_CASE("quadratic family closed forms") {
    // b = 1/2 makes the sum telescope to exactly 4.
    CHECK(err_log10(tauraso_closed_form(Rational(0), Rational(1, 2), 60),
                    BigFloat(4, 256)) < -57);
    // a = 1/2, b = 0: sum 2/(n(n-1/2)) = 8 ln 2 by partial fractions.
    CHECK(err_log10(tauraso_closed_form(Rational(1, 2), Rational(0), 60),
                    BigFloat(8, 256) * BigFloat(2, 256).log_abs()) < -57);
    // Generic parameters against a direct double-precision partial sum.
    double direct = 0;
    for (long n = 1; n <= 4000000; ++n)
        direct += 2.0 / (double(n) * n - n / 3.0 - 0.25);
    double got =
        tauraso_closed_form(Rational(1, 3), Rational(1, 2), 30).to_double();
    CHECK(std::fabs(got - direct) < 1e-5);
}

TEST_CASE("quartic family closed forms") {
    CHECK(err_log10(tauraso_quartic_closed_form(Rational(0), Rational(0), 60),
                    BigFloat(4, 256) * zeta_ref(3, 60)) < -57);
    for (auto [a, b] : {std::pair<Rational, Rational>{Rational(0), Rational(1, 2)},
                        {Rational(1, 3), Rational(1, 2)}}) {
        double a2 = a.to_double() * a.to_double();
        double b4 = std::pow(b.to_double(), 4);
        double direct = 0;
        for (long n = 1; n <= 300000; ++n) {
            double n2 = double(n) * n;
            direct += 4.0 * n / (n2 * n2 - a2 * n2 - b4);
        }
        double got = tauraso_quartic_closed_form(a, b, 30).to_double();
        CHECK(std::fabs(got - direct) < 1e-8);
    }
}

TEST_CASE("doubling digits is self-consistent") {
    CHECK(err_log10(zeta_ref(7, 80), zeta_ref(7, 160)) < -85);
    CHECK(err_log10(hurwitz_ref(3, Rational(1, 2), 80),
                    hurwitz_ref(3, Rational(1, 2), 160)) < -85);
    CHECK(err_log10(euler_gamma_ref(80), euler_gamma_ref(160)) < -85);
    CHECK(err_log10(pi_ref(80), pi_ref(160)) < -85);
}

TEST_CASE("oracle dispatch") {
    ResolvedConstant c;
    c.kind = ConstantKind::Zeta;
    c.s = 3;
    CHECK(err_log10(oracle_value(c, 40), zeta_ref(3, 40)) < -38);
    CHECK(!oracle_exact(c).has_value());

    c.kind = ConstantKind::HarmonicCubic;
    c.n_cap = 5;
    auto exact = oracle_exact(c);
    REQUIRE(exact.has_value());
    CHECK(*exact == harmonic(5, 3));
    CHECK(err_log10(oracle_value(c, 40), BigFloat(harmonic(5, 3), 256)) < -38);

    c = ResolvedConstant{};
    c.kind = ConstantKind::ScaledZeta;
    c.s = 2;
    c.factor = Rational(3);
    CHECK(err_log10(oracle_value(c, 40), BigFloat(3, 256) * zeta_ref(2, 40)) <
          -38);

    c = ResolvedConstant{};
    c.kind = ConstantKind::Eta;
    c.s = 2;
    CHECK(err_log10(oracle_value(c, 40), eta_ref(2, 40)) < -38);
}

TEST_CASE("constant descriptors") {
    ConstantDescriptor d = ConstantDescriptor::parse("hurwitz(3,z)");
    CHECK(d.kind == ConstantKind::Hurwitz);
    CHECK(d.s == 3);
    CHECK(d.arg1.symbolic());
    ParamMap params{{"z", Rational(1, 2)}};
    ResolvedConstant r = d.resolve(params);
    CHECK(r.z == Rational(1, 2));
    CHECK(r.to_string() == "hurwitz(3,1/2)");
    CHECK(d.to_string() == "hurwitz(3,z)");

    CHECK(ConstantDescriptor::parse("zeta(3)") ==
          ConstantDescriptor::parse("zeta(3)"));
    CHECK(ConstantDescriptor::parse("zeta(3)") !=
          ConstantDescriptor::parse("zeta(5)"));
    CHECK_THROWS_AS(ConstantDescriptor::parse("zeta(3"), ParseError);
    CHECK_THROWS_AS(ConstantDescriptor::parse("nosuch(3)"), ParseError);

    ResolvedConstant bad;
    bad.kind = ConstantKind::Zeta;
    bad.s = 1;
    CHECK_THROWS_AS(check_computable(bad), DomainError);
    bad.kind = ConstantKind::Hurwitz;
    bad.s = 3;
    bad.z = Rational(-4);
    CHECK_THROWS_AS(check_computable(bad), DomainError);
    bad.z = Rational(-7, 2);  // off the poles: fine
    CHECK_NOTHROW(check_computable(bad));
}
