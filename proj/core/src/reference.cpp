#include "gosper/reference.hpp"

#include <cmath>
#include <mutex>
#include <vector>

#include "gosper/errors.hpp"
#include "gosper/symfun.hpp"

namespace gosper {

namespace {

constexpr double kLog10 = 2.302585092994046;  // ln 10
constexpr double kLog10Of2Pi = 0.7981798683581151;

void check_digits(int digits) {
    if (digits < 1 || digits > 200000)
        throw DomainError("digit count must be between 1 and 200000, got " +
                          std::to_string(digits));
}

// Working precision carrying ~10 guard digits.
long prec_for(int digits) {
    long bits = static_cast<long>(std::ceil((digits + 10) * 3.3219280948874));
    return bits + 16 < BigFloat::min_precision ? BigFloat::min_precision
                                               : bits + 16;
}

}  // namespace

const Rational& bernoulli(unsigned n) {
    static std::vector<Rational> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    while (cache.size() <= n) {
        unsigned m = static_cast<unsigned>(cache.size());
        if (m == 0) {
            cache.emplace_back(1);
            continue;
        }
        // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j
        Rational sum(0);
        for (unsigned j = 0; j < m; ++j)
            sum += Rational(binomial(BigInt(static_cast<long>(m) + 1),
                                     BigInt(static_cast<long>(j)))) *
                   cache[j];
        cache.push_back(-sum / Rational(static_cast<long>(m) + 1));
    }
    return cache[n];
}

namespace {

// Tail-correction parameters for the Euler-Maclaurin zeta sum: direct terms
// up to X = M + A, then v Bernoulli corrections.  The remainder after v
// corrections is bounded by the first omitted term,
// |B_{2v+2}/(2v+2)!| * s(s+1)...(s+2v) * X^{-s-2v-1}, estimated here in
// double log10 arithmetic with |B_{2n}|/(2n)! <= 4/(2pi)^{2n}.
struct EmPlan {
    long direct_terms;  // M
    int corrections;    // v
};

EmPlan plan_euler_maclaurin(long s, double a, int digits) {
    double target = -(digits + 7.0);
    double x = std::max({static_cast<double>(s) + 2.0, 0.35 * digits + 10.0,
                         a + 1.0});
    for (int rounds = 0; rounds < 64; ++rounds) {
        for (int v = 1; v <= 400; ++v) {
            double bound = std::log10(4.0) - (2 * v + 2) * kLog10Of2Pi +
                           (std::lgamma(static_cast<double>(s) + 2 * v + 1) -
                            std::lgamma(static_cast<double>(s))) /
                               kLog10 -
                           (s + 2.0 * v + 1.0) * std::log10(x);
            if (bound < target) {
                long m = static_cast<long>(std::ceil(x - a));
                if (m < 1) m = 1;
                return {m, v};
            }
        }
        x *= 1.5;
    }
    throw Error("no Euler-Maclaurin plan found");
}

// zeta(s, A) = sum_{n>=0} (n+A)^-s for rational A > 0, integer s >= 2.
BigFloat zeta_shifted(long s, const Rational& a, int digits) {
    long prec = prec_for(digits);
    EmPlan plan = plan_euler_maclaurin(s, a.to_double(), digits);

    BigFloat sum(prec);
    for (long n = 0; n < plan.direct_terms; ++n)
        sum += BigFloat((Rational(n) + a).pow(-s), prec);

    Rational x_exact = Rational(plan.direct_terms) + a;
    BigFloat x(x_exact, prec);
    // Integral term X^{1-s}/(s-1) and the half-weight boundary term.
    sum += BigFloat(x_exact.pow(1 - s) / Rational(s - 1), prec);
    sum += BigFloat(x_exact.pow(-s) / Rational(2), prec);

    // Bernoulli corrections: B_{2j}/(2j)! * s(s+1)...(s+2j-2) * X^{1-s-2j}.
    BigInt rising(s);  // s(s+1)...(s+2j-2), updated per j
    BigFloat xpow = x.pow(-s - 1);
    BigFloat xstep = x.pow(-2);
    for (int j = 1; j <= plan.corrections; ++j) {
        if (j > 1)
            rising = rising * BigInt(s + 2 * j - 3) * BigInt(s + 2 * j - 2);
        Rational coeff = bernoulli(2 * static_cast<unsigned>(j)) *
                         Rational(rising) /
                         Rational(factorial(2 * static_cast<unsigned long>(j)));
        sum += BigFloat(coeff, prec) * xpow;
        xpow *= xstep;
    }
    return sum;
}

}  // namespace

BigFloat zeta_ref(long s, int digits) {
    check_digits(digits);
    if (s < 2)
        throw DomainError("zeta reference needs s >= 2, got " +
                          std::to_string(s));
    return zeta_shifted(s, Rational(1), digits);
}

BigFloat eta_ref(long s, int digits) {
    check_digits(digits);
    if (s < 2)
        throw DomainError("eta reference needs s >= 2, got " +
                          std::to_string(s));
    // eta(s) = (1 - 2^{1-s}) zeta(s), with the prefactor exact.
    Rational factor =
        Rational(1) -
        Rational(BigInt(1), BigInt(2).pow(static_cast<unsigned long>(s - 1)));
    return BigFloat(factor, prec_for(digits)) * zeta_ref(s, digits);
}

BigFloat hurwitz_ref(long s, const Rational& z, int digits) {
    check_digits(digits);
    if (s < 2)
        throw DomainError("hurwitz reference needs s >= 2, got " +
                          std::to_string(s));
    if (z.is_integer() && z.sign() < 0)
        throw DomainError("hurwitz shift " + z.to_string() +
                          " hits a vanishing summand");
    // Sum the head exactly until n + z > 0, then Euler-Maclaurin the rest:
    // the first index with a positive base is head = floor(-z) + 1 (or 1).
    long head = 1;
    if (z.sign() < 0) {
        Rational ratio = -z;  // positive; head - 1 = floor(ratio)
        long guess = static_cast<long>(ratio.to_double());
        while (Rational(guess + 1) <= ratio) ++guess;
        while (Rational(guess) > ratio) --guess;
        head = guess + 1;
    }
    long prec = prec_for(digits);
    BigFloat sum(prec);
    for (long n = 1; n < head; ++n)
        sum += BigFloat((Rational(n) + z).pow(-s), prec);
    // remaining tail: sum_{n>=head} (n+z)^-s = zeta(s, head+z), head+z > 0
    sum += zeta_shifted(s, Rational(head) + z, digits);
    return sum;
}

namespace {

// Asymptotic digamma plan: psi(X) = ln X - 1/(2X)
//   - sum_{j=1}^{v} B_{2j}/(2j X^{2j}), remainder below the first omitted
// term.  Needs X large enough; returns the minimum X and v.
struct DigammaPlan {
    double x_min;
    int corrections;
};

DigammaPlan plan_digamma(int digits) {
    double target = -(digits + 7.0);
    double x = std::max(10.0, 0.3 * digits + 8.0);
    for (int rounds = 0; rounds < 64; ++rounds) {
        for (int v = 1; v <= 400; ++v) {
            // |B_{2v+2}| / ((2v+2) X^{2v+2}) with
            // |B_{2n}| <= 4 (2n)! / (2pi)^{2n}
            int n2 = 2 * v + 2;
            double bound = std::log10(4.0) + std::lgamma(n2 + 1.0) / kLog10 -
                           n2 * kLog10Of2Pi - std::log10(double(n2)) -
                           n2 * std::log10(x);
            if (bound < target) return {x, v};
        }
        x *= 1.5;
    }
    throw Error("no digamma plan found");
}

// Core asymptotic series at X (already >= plan.x_min).
BigFloat digamma_asymptotic(const BigFloat& x, int corrections, long prec) {
    BigFloat result = x.log_abs();
    result -= BigFloat(Rational(1, 2), prec) / x;
    BigFloat x2inv = x.pow(-2);
    BigFloat xpow = x2inv;
    for (int j = 1; j <= corrections; ++j) {
        Rational coeff =
            bernoulli(2 * static_cast<unsigned>(j)) / Rational(2 * j);
        result -= BigFloat(coeff, prec) * xpow;
        xpow *= x2inv;
    }
    return result;
}

}  // namespace

BigFloat digamma_ref(const Rational& x, int digits) {
    check_digits(digits);
    if (x.is_integer() && x.sign() <= 0)
        throw DomainError("digamma pole at " + x.to_string());
    long prec = prec_for(digits);
    DigammaPlan plan = plan_digamma(digits);
    // Upward recurrence: psi(x) = psi(x+m) - sum_{j=0}^{m-1} 1/(x+j).
    long shift = static_cast<long>(std::ceil(plan.x_min - x.to_double()));
    if (shift < 0) shift = 0;
    Rational head(0);
    for (long j = 0; j < shift; ++j) head += (x + Rational(j)).invert();
    BigFloat big_x(x + Rational(shift), prec);
    return digamma_asymptotic(big_x, plan.corrections, prec) -
           BigFloat(head, prec);
}

BigFloat digamma_ref(const BigFloat& x, int digits) {
    check_digits(digits);
    if (x.is_zero()) throw DomainError("digamma pole at 0");
    long prec = prec_for(digits) > x.precision() ? prec_for(digits)
                                                 : x.precision();
    DigammaPlan plan = plan_digamma(digits);
    long shift = static_cast<long>(std::ceil(plan.x_min - x.to_double()));
    if (shift < 0) shift = 0;
    BigFloat head(prec);
    BigFloat one(1L, prec);
    for (long j = 0; j < shift; ++j) {
        BigFloat term = x + BigFloat(j, prec);
        if (term.is_zero())
            throw DomainError("digamma pole on the recurrence path");
        head += one / term;
    }
    BigFloat big_x = x + BigFloat(shift, prec);
    return digamma_asymptotic(big_x, plan.corrections, prec) - head;
}

BigFloat pi_ref(int digits) {
    check_digits(digits);
    long prec = prec_for(digits);
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239), with
    // atan(1/q) = sum_j (-1)^j / ((2j+1) q^{2j+1}).
    auto arctan_inv = [&](long q) {
        BigFloat sum(prec);
        BigFloat power(Rational(1, q), prec);
        BigFloat step(Rational(1, q * q), prec);
        double per_term = 2 * std::log10(static_cast<double>(q));
        long terms = static_cast<long>((digits + 12) / per_term) + 2;
        for (long j = 0; j < terms; ++j) {
            BigFloat term = power / BigFloat(2 * j + 1, prec);
            if (j % 2 == 0)
                sum += term;
            else
                sum -= term;
            power *= step;
        }
        return sum;
    };
    return BigFloat(16, prec) * arctan_inv(5) -
           BigFloat(4, prec) * arctan_inv(239);
}

BigFloat euler_gamma_ref(int digits) {
    check_digits(digits);
    return -digamma_ref(Rational(1), digits);
}

BigFloat tauraso_closed_form(const Rational& a, const Rational& b,
                             int digits) {
    check_digits(digits);
    ResolvedConstant c;
    c.kind = ConstantKind::Tauraso;
    c.a = a;
    c.b = b;
    check_computable(c);
    Rational disc = a * a + Rational(4) * b * b;
    if (disc.is_zero())  // a = b = 0: plain 2 zeta(2)
        return BigFloat(Rational(2), prec_for(digits)) * zeta_ref(2, digits);
    long prec = prec_for(digits);
    BigFloat d = BigFloat(disc, prec).sqrt();
    BigFloat half_a(a / Rational(2), prec);
    BigFloat one(1L, prec);
    BigFloat half_d = d / BigFloat(2, prec);
    BigFloat upper = one - half_a + half_d;
    BigFloat lower = one - half_a - half_d;
    return BigFloat(2, prec) / d *
           (digamma_ref(upper, digits) - digamma_ref(lower, digits));
}

namespace {

// S(c) = sum_{n>=1} 1/(n (n^2 + c)) for c > 0: direct terms up to M with
// c/M^2 <= 1/4, then the expansion sum_j (-c)^j * T(2j+3) over zeta tails
// T(s) = sum_{n>M} n^{-s}, each tail evaluated by the Euler-Maclaurin form
// with no direct part.
BigFloat cubic_lattice_sum(const BigFloat& c, int digits) {
    long prec = prec_for(digits);
    double c_d = c.to_double();
    long split = std::max<long>(10, 2 * static_cast<long>(std::sqrt(
                                          std::max(0.0, c_d))) +
                                        2);
    BigFloat sum(prec);
    BigFloat one(1L, prec);
    for (long n = 1; n <= split; ++n) {
        BigFloat nf(n, prec);
        sum += one / (nf * (nf * nf + c));
    }
    // tails: T(2j+3) decays like split^{-2j-2}, each j multiplies by at most
    // c/split^2 <= 1/4
    BigFloat cpow = one;
    double tail_log = -2.0 * std::log10(static_cast<double>(split));
    double ratio_log =
        c_d > 0 ? std::log10(c_d) + tail_log : -digits - 20.0;
    long j_max =
        ratio_log < -0.01
            ? static_cast<long>((digits + 12) / -ratio_log) + 2
            : static_cast<long>((digits + 12) / 0.602) + 2;  // ratio 1/4
    for (long j = 0; j <= j_max; ++j) {
        BigFloat tail =
            zeta_shifted(2 * j + 3, Rational(split + 1), digits + 10);
        sum += cpow * tail;
        cpow *= -c;
    }
    return sum;
}

}  // namespace

BigFloat tauraso_quartic_closed_form(const Rational& a, const Rational& b,
                                     int digits) {
    check_digits(digits);
    ResolvedConstant con;
    con.kind = ConstantKind::TaurasoQuartic;
    con.a = a;
    con.b = b;
    check_computable(con);
    Rational a2 = a * a;
    Rational disc = a2 * a2 + Rational(4) * b * b * b * b;
    if (disc.is_zero())  // a = b = 0: 4 zeta(3)
        return BigFloat(Rational(4), prec_for(digits)) * zeta_ref(3, digits);
    long prec = prec_for(digits);
    BigFloat sq = BigFloat(disc, prec).sqrt();
    BigFloat a2f(a2, prec);
    BigFloat two(2, prec);
    // n^4 - a^2 n^2 - b^4 = (n^2 - y)(n^2 + c), y + c = sq
    BigFloat y = (a2f + sq) / two;
    BigFloat c = (sq - a2f) / two;
    // G(y) = sum [n/(n^2-y) - 1/n] = -gamma - (psi(1-g) + psi(1+g))/2,
    // g = sqrt(y)
    BigFloat g = y.sqrt();
    BigFloat one(1L, prec);
    BigFloat gamma = euler_gamma_ref(digits);
    BigFloat g_plus =
        -gamma - (digamma_ref(one - g, digits) + digamma_ref(one + g, digits)) /
                     two;
    // G(-c) = sum [n/(n^2+c) - 1/n] = -c * S(c)
    BigFloat g_minus(prec);
    if (!c.is_zero()) g_minus = -c * cubic_lattice_sum(c, digits);
    return BigFloat(4, prec) / sq * (g_plus - g_minus);
}

BigFloat oracle_value(const ResolvedConstant& c, int digits) {
    check_digits(digits);
    check_computable(c);
    switch (c.kind) {
        case ConstantKind::Zeta:
            return zeta_ref(c.s, digits);
        case ConstantKind::Eta:
            return eta_ref(c.s, digits);
        case ConstantKind::Hurwitz:
            return hurwitz_ref(c.s, c.z, digits);
        case ConstantKind::Tauraso:
            return tauraso_closed_form(c.a, c.b, digits);
        case ConstantKind::TaurasoQuartic:
            return tauraso_quartic_closed_form(c.a, c.b, digits);
        case ConstantKind::HarmonicCubic:
            return BigFloat(harmonic(c.n_cap, 3), prec_for(digits));
        case ConstantKind::ScaledZeta: {
            double extra = std::max(0.0, log10_abs(Scalar(c.factor)));
            return BigFloat(c.factor, prec_for(digits)) *
                   zeta_ref(c.s, digits + static_cast<int>(extra) + 2);
        }
    }
    throw Error("unknown constant kind");
}

std::optional<Rational> oracle_exact(const ResolvedConstant& c) {
    if (c.kind == ConstantKind::HarmonicCubic) return harmonic(c.n_cap, 3);
    return std::nullopt;
}

}  // namespace gosper
