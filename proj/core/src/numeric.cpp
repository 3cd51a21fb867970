#include "gosper/numeric.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace gosper {

namespace {

BigInt pow10(long e) {
    BigInt r;
    mpz_ui_pow_ui(r.raw(), 10, static_cast<unsigned long>(e));
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// BigInt

BigInt::BigInt(const std::string& text) {
    if (mpz_init_set_str(z_, text.c_str(), 10) != 0) {
        mpz_clear(z_);
        mpz_init(z_);
        throw DomainError("invalid integer literal '" + text + "'");
    }
}

long BigInt::to_long() const {
    if (!fits_long()) throw DomainError("integer too large for long");
    return mpz_get_si(z_);
}

std::string BigInt::to_string() const {
    char* s = mpz_get_str(nullptr, 10, z_);
    std::string out(s);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(s, out.size() + 1);
    return out;
}

BigInt BigInt::exact_sqrt() const {
    if (sign() < 0 || !is_perfect_square())
        throw DomainError("exact_sqrt of a non-square: " + to_string());
    BigInt r;
    mpz_sqrt(r.raw(), z_);
    return r;
}

BigInt binomial(const BigInt& n, const BigInt& k) {
    if (n.sign() < 0 || k.sign() < 0)
        throw DomainError("binomial requires nonnegative arguments");
    if (k > n) return BigInt(0);
    if (!k.fits_long())
        throw DomainError("binomial order too large: " + k.to_string());
    BigInt r;
    mpz_bin_ui(r.raw(), n.raw(), static_cast<unsigned long>(k.to_long()));
    return r;
}

BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.raw(), n);
    return r;
}

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(long num, long den) {
    mpq_init(q_);
    if (den == 0) throw DomainError("rational with zero denominator");
    mpq_set_si(q_, num, 1);
    Rational d;
    mpq_set_si(d.q_, den, 1);
    mpq_div(q_, q_, d.q_);
}

Rational::Rational(const BigInt& num, const BigInt& den) {
    mpq_init(q_);
    if (den.is_zero()) throw DomainError("rational with zero denominator");
    mpz_set(mpq_numref(q_), num.raw());
    mpz_set(mpq_denref(q_), den.raw());
    mpq_canonicalize(q_);
}

Rational::Rational(const std::string& text) {
    mpq_init(q_);
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            BigInt n(text);
            mpq_set_z(q_, n.raw());
        } else {
            BigInt n(text.substr(0, slash));
            BigInt d(text.substr(slash + 1));
            *this = Rational(n, d);
        }
    } catch (const DomainError&) {
        mpq_clear(q_);
        mpq_init(q_);
        throw DomainError("invalid rational literal '" + text + "'");
    }
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw DomainError("division by zero");
    Rational r;
    mpq_div(r.q_, a.q_, b.q_);
    return r;
}

Rational Rational::invert() const {
    if (is_zero()) throw DomainError("inverse of zero");
    Rational r;
    mpq_inv(r.q_, q_);
    return r;
}

Rational Rational::pow(long e) const {
    if (e == 0) return Rational(1);
    if (is_zero()) {
        if (e < 0) throw DomainError("zero raised to a negative power");
        return Rational(0);
    }
    unsigned long mag =
        e < 0 ? -static_cast<unsigned long>(e) : static_cast<unsigned long>(e);
    BigInt num, den;
    mpz_pow_ui(num.raw(), mpq_numref(q_), mag);
    mpz_pow_ui(den.raw(), mpq_denref(q_), mag);
    return e > 0 ? Rational(num, den) : Rational(den, num);
}

BigInt Rational::numerator() const {
    BigInt r;
    mpz_set(r.raw(), mpq_numref(q_));
    return r;
}

BigInt Rational::denominator() const {
    BigInt r;
    mpz_set(r.raw(), mpq_denref(q_));
    return r;
}

std::string Rational::to_string() const {
    char* s = mpq_get_str(nullptr, 10, q_);
    std::string out(s);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(s, out.size() + 1);
    return out;
}

// ---------------------------------------------------------------------------
// BigFloat

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    if (b.is_zero()) throw DomainError("division by zero");
    BigFloat r(BigFloat::join_precision(a, b));
    mpfr_div(r.f_, a.f_, b.f_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::invert() const {
    if (is_zero()) throw DomainError("inverse of zero");
    BigFloat r(precision());
    mpfr_si_div(r.f_, 1, f_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::pow(long e) const {
    if (is_zero() && e < 0)
        throw DomainError("zero raised to a negative power");
    BigFloat r(precision());
    mpfr_pow_si(r.f_, f_, e, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::sqrt() const {
    if (sign() < 0) throw DomainError("square root of a negative number");
    BigFloat r(precision());
    mpfr_sqrt(r.f_, f_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::log_abs() const {
    if (is_zero()) throw DomainError("logarithm of zero");
    BigFloat r(precision());
    mpfr_abs(r.f_, f_, MPFR_RNDN);
    mpfr_log(r.f_, r.f_, MPFR_RNDN);
    return r;
}

double BigFloat::log10_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    long exp = 0;
    double m = mpfr_get_d_2exp(&exp, f_, MPFR_RNDN);
    return std::log10(std::fabs(m)) +
           static_cast<double>(exp) * std::log10(2.0);
}

// ---------------------------------------------------------------------------
// Scalar

const Rational& Scalar::rational() const {
    if (!is_rational()) throw Error("scalar does not hold a rational value");
    return std::get<Rational>(v_);
}

const BigFloat& Scalar::floating() const {
    if (!is_float()) throw Error("scalar does not hold a float value");
    return std::get<BigFloat>(v_);
}

bool Scalar::is_zero() const {
    return is_rational() ? rational().is_zero() : floating().is_zero();
}

int Scalar::sign() const {
    return is_rational() ? rational().sign() : floating().sign();
}

std::string Scalar::to_string() const {
    return is_rational() ? rational().to_string() : to_decimal(floating(), 20);
}

double Scalar::to_double() const {
    return is_rational() ? rational().to_double() : floating().to_double();
}

namespace {

// Apply a binary operation with rational->float promotion on mixed inputs.
template <typename RatOp, typename FltOp>
Scalar combine(const Scalar& a, const Scalar& b, RatOp rop, FltOp fop) {
    if (a.is_rational() && b.is_rational()) return rop(a.rational(), b.rational());
    if (a.is_float() && b.is_float()) return fop(a.floating(), b.floating());
    if (a.is_rational()) {
        BigFloat fa(a.rational(), b.floating().precision());
        return fop(fa, b.floating());
    }
    BigFloat fb(b.rational(), a.floating().precision());
    return fop(a.floating(), fb);
}

}  // namespace

Scalar add(const Scalar& a, const Scalar& b) {
    return combine(
        a, b, [](const Rational& x, const Rational& y) { return Scalar(x + y); },
        [](const BigFloat& x, const BigFloat& y) { return Scalar(x + y); });
}

Scalar sub(const Scalar& a, const Scalar& b) {
    return combine(
        a, b, [](const Rational& x, const Rational& y) { return Scalar(x - y); },
        [](const BigFloat& x, const BigFloat& y) { return Scalar(x - y); });
}

Scalar mul(const Scalar& a, const Scalar& b) {
    return combine(
        a, b, [](const Rational& x, const Rational& y) { return Scalar(x * y); },
        [](const BigFloat& x, const BigFloat& y) { return Scalar(x * y); });
}

Scalar div(const Scalar& a, const Scalar& b) {
    return combine(
        a, b, [](const Rational& x, const Rational& y) { return Scalar(x / y); },
        [](const BigFloat& x, const BigFloat& y) { return Scalar(x / y); });
}

Scalar neg(const Scalar& a) {
    return a.is_rational() ? Scalar(-a.rational()) : Scalar(-a.floating());
}

Scalar invert(const Scalar& a) {
    return a.is_rational() ? Scalar(a.rational().invert())
                           : Scalar(a.floating().invert());
}

Scalar abs(const Scalar& a) {
    return a.is_rational() ? Scalar(a.rational().abs())
                           : Scalar(a.floating().abs());
}

bool equal(const Scalar& a, const Scalar& b) {
    if (a.is_rational() && b.is_rational()) return a.rational() == b.rational();
    if (a.is_float() && b.is_float())
        return mpfr_cmp(a.floating().raw(), b.floating().raw()) == 0;
    const BigFloat& f = a.is_float() ? a.floating() : b.floating();
    const Rational& q = a.is_rational() ? a.rational() : b.rational();
    return mpfr_cmp_q(f.raw(), q.raw()) == 0;
}

BigFloat to_float(const Scalar& a, long precision) {
    if (a.is_rational()) return BigFloat(a.rational(), precision);
    BigFloat r(precision);
    mpfr_set(r.raw(), a.floating().raw(), MPFR_RNDN);
    return r;
}

double log10_abs(const Scalar& a) {
    if (a.is_zero()) return -std::numeric_limits<double>::infinity();
    if (a.is_float()) return a.floating().log10_abs();
    const Rational& q = a.rational();
    long en = 0, ed = 0;
    double mn = mpz_get_d_2exp(&en, mpq_numref(q.raw()));
    double md = mpz_get_d_2exp(&ed, mpq_denref(q.raw()));
    return std::log10(std::fabs(mn)) - std::log10(std::fabs(md)) +
           static_cast<double>(en - ed) * std::log10(2.0);
}

// ---------------------------------------------------------------------------
// Decimal rendering.
//
// All paths reduce to exact integer arithmetic: the value is scaled by a
// power of ten so that exactly `digits` digits remain before the (virtual)
// point, then rounded half-to-even.  Floats are first converted exactly to
// rationals, so both backends share one rounding implementation.

namespace {

std::string zero_form(int digits) {
    std::string s = "0";
    if (digits > 1) s += "." + std::string(static_cast<size_t>(digits - 1), '0');
    return s + "e0";
}

// floor(log10 |x|) for nonzero x, by exact comparison against powers of ten.
long floor_log10_abs(const Rational& x) {
    BigInt num = x.numerator().abs();
    BigInt den = x.denominator();
    // Digit-count estimate is within one of the truth; correct by comparing.
    long est = static_cast<long>(mpz_sizeinbase(num.raw(), 10)) -
               static_cast<long>(mpz_sizeinbase(den.raw(), 10));
    auto at_least_pow10 = [&](long d) {  // |x| >= 10^d ?
        if (d >= 0) return num >= den * pow10(d);
        return num * pow10(-d) >= den;
    };
    long d = est;
    while (!at_least_pow10(d)) --d;
    while (at_least_pow10(d + 1)) ++d;
    return d;
}

std::string format_digits(const std::string& digits_str, long d, bool negative,
                          int digits) {
    std::string body;
    if (d < -4 || d > 8) {
        body = digits_str.substr(0, 1);
        if (digits > 1) body += "." + digits_str.substr(1);
        body += "e" + std::to_string(d);
    } else if (d >= 0) {
        if (digits >= d + 2) {
            body = digits_str.substr(0, static_cast<size_t>(d + 1)) + "." +
                   digits_str.substr(static_cast<size_t>(d + 1));
        } else {
            body = digits_str +
                   std::string(static_cast<size_t>(d + 1 - digits), '0');
        }
    } else {
        body = "0." + std::string(static_cast<size_t>(-1 - d), '0') + digits_str;
    }
    return negative ? "-" + body : body;
}

}  // namespace

std::string to_decimal(const Rational& value, int digits) {
    if (digits < 1) throw DomainError("to_decimal requires at least one digit");
    if (value.is_zero()) return zero_form(digits);

    bool negative = value.sign() < 0;
    long d = floor_log10_abs(value);

    // Scale so the digits we keep sit in the integer part, then round.
    long s = digits - 1 - d;
    BigInt num = value.numerator().abs();
    BigInt den = value.denominator();
    if (s >= 0)
        num = num * pow10(s);
    else
        den = den * pow10(-s);

    BigInt q, r;
    mpz_fdiv_qr(q.raw(), r.raw(), num.raw(), den.raw());
    BigInt twice_r = r + r;
    if (twice_r > den || (twice_r == den && mpz_odd_p(q.raw())))
        q = q + BigInt(1);

    if (q == pow10(digits)) {  // rounding overflowed into one more digit
        q = pow10(digits - 1);
        ++d;
    }
    return format_digits(q.to_string(), d, negative, digits);
}

std::string to_decimal(const BigFloat& value, int digits) {
    if (digits < 1) throw DomainError("to_decimal requires at least one digit");
    if (!mpfr_number_p(value.raw()))
        throw DomainError("to_decimal of a non-finite float");
    if (value.is_zero()) return zero_form(digits);
    Rational exact;
    mpfr_get_q(exact.raw(), value.raw());
    return to_decimal(exact, digits);
}

std::string to_decimal(const Scalar& value, int digits) {
    return value.is_rational() ? to_decimal(value.rational(), digits)
                               : to_decimal(value.floating(), digits);
}

}  // namespace gosper
