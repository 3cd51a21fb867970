#pragma once

#include <gmp.h>
#include <mpfr.h>

#include <string>
#include <variant>

#include "gosper/errors.hpp"

namespace gosper {

// Arbitrary-precision integer backed by GMP's mpz_t.
class BigInt {
public:
    BigInt() { mpz_init(z_); }
    BigInt(long n) { mpz_init_set_si(z_, n); }  // NOLINT: implicit by design
    explicit BigInt(const std::string& text);
    BigInt(const BigInt& other) { mpz_init_set(z_, other.z_); }
    BigInt(BigInt&& other) noexcept {
        mpz_init(z_);
        mpz_swap(z_, other.z_);
    }
    BigInt& operator=(const BigInt& other) {
        if (this != &other) mpz_set(z_, other.z_);
        return *this;
    }
    BigInt& operator=(BigInt&& other) noexcept {
        mpz_swap(z_, other.z_);
        return *this;
    }
    ~BigInt() { mpz_clear(z_); }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_add(r.z_, a.z_, b.z_);
        return r;
    }
    friend BigInt operator-(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_sub(r.z_, a.z_, b.z_);
        return r;
    }
    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_mul(r.z_, a.z_, b.z_);
        return r;
    }
    friend BigInt operator-(const BigInt& a) {
        BigInt r;
        mpz_neg(r.z_, a.z_);
        return r;
    }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        return mpz_cmp(a.z_, b.z_) == 0;
    }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
    friend bool operator<(const BigInt& a, const BigInt& b) {
        return mpz_cmp(a.z_, b.z_) < 0;
    }
    friend bool operator<=(const BigInt& a, const BigInt& b) {
        return mpz_cmp(a.z_, b.z_) <= 0;
    }
    friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return b <= a; }

    int sign() const { return mpz_sgn(z_); }
    bool is_zero() const { return mpz_sgn(z_) == 0; }
    bool fits_long() const { return mpz_fits_slong_p(z_) != 0; }
    long to_long() const;
    std::string to_string() const;

    BigInt abs() const {
        BigInt r;
        mpz_abs(r.z_, z_);
        return r;
    }
    BigInt pow(unsigned long e) const {
        BigInt r;
        mpz_pow_ui(r.z_, z_, e);
        return r;
    }
    bool is_perfect_square() const { return mpz_perfect_square_p(z_) != 0; }
    // Integer square root of a perfect square; DomainError otherwise.
    BigInt exact_sqrt() const;

    // Raw handles for interoperation with GMP/MPFR calls.
    mpz_srcptr raw() const { return z_; }
    mpz_ptr raw() { return z_; }

private:
    mpz_t z_;
};

BigInt binomial(const BigInt& n, const BigInt& k);
BigInt factorial(unsigned long n);

// Exact rational number backed by GMP's mpq_t.  Always kept canonical:
// gcd(num, den) = 1 and den > 0.
class Rational {
public:
    Rational() { mpq_init(q_); }
    Rational(long n) {  // NOLINT: implicit by design
        mpq_init(q_);
        mpq_set_si(q_, n, 1);
    }
    Rational(long num, long den);
    Rational(const BigInt& num, const BigInt& den);
    explicit Rational(const BigInt& n) {
        mpq_init(q_);
        mpq_set_z(q_, n.raw());
    }
    // Accepts "p", "-p", "p/q" with optional sign; canonicalizes.
    explicit Rational(const std::string& text);
    Rational(const Rational& other) {
        mpq_init(q_);
        mpq_set(q_, other.q_);
    }
    Rational(Rational&& other) noexcept {
        mpq_init(q_);
        mpq_swap(q_, other.q_);
    }
    Rational& operator=(const Rational& other) {
        if (this != &other) mpq_set(q_, other.q_);
        return *this;
    }
    Rational& operator=(Rational&& other) noexcept {
        mpq_swap(q_, other.q_);
        return *this;
    }
    ~Rational() { mpq_clear(q_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        Rational r;
        mpq_add(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        Rational r;
        mpq_sub(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        Rational r;
        mpq_mul(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rational operator/(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a) {
        Rational r;
        mpq_neg(r.q_, a.q_);
        return r;
    }
    Rational& operator+=(const Rational& o) {
        mpq_add(q_, q_, o.q_);
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        mpq_sub(q_, q_, o.q_);
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        mpq_mul(q_, q_, o.q_);
        return *this;
    }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return mpq_equal(a.q_, b.q_) != 0;
    }
    friend bool operator!=(const Rational& a, const Rational& b) {
        return !(a == b);
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return mpq_cmp(a.q_, b.q_) < 0;
    }
    friend bool operator<=(const Rational& a, const Rational& b) {
        return mpq_cmp(a.q_, b.q_) <= 0;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) {
        return b <= a;
    }

    // Multiplicative inverse; DomainError on zero.
    Rational invert() const;
    // Integer power, negative exponents allowed (0^negative is a DomainError).
    Rational pow(long e) const;
    Rational abs() const {
        Rational r;
        mpq_abs(r.q_, q_);
        return r;
    }

    int sign() const { return mpq_sgn(q_); }
    bool is_zero() const { return mpq_sgn(q_) == 0; }
    bool is_integer() const {
        return mpz_cmp_ui(mpq_denref(q_), 1) == 0;
    }
    BigInt numerator() const;
    BigInt denominator() const;
    // "p/q", or just "p" when the denominator is 1.
    std::string to_string() const;
    double to_double() const { return mpq_get_d(q_); }

    mpq_srcptr raw() const { return q_; }
    mpq_ptr raw() { return q_; }

private:
    mpq_t q_;
};

// Binary floating-point number backed by MPFR.  All operations round to
// nearest (ties to even).  Precision is at least 64 bits and is carried by
// the value: binary operations compute at the larger operand precision.
class BigFloat {
public:
    static constexpr long min_precision = 64;

    explicit BigFloat(long precision = min_precision) {
        mpfr_init2(f_, check_precision(precision));
        mpfr_set_zero(f_, 1);
    }
    BigFloat(const Rational& value, long precision) {
        mpfr_init2(f_, check_precision(precision));
        mpfr_set_q(f_, value.raw(), MPFR_RNDN);
    }
    BigFloat(long value, long precision) {
        mpfr_init2(f_, check_precision(precision));
        mpfr_set_si(f_, value, MPFR_RNDN);
    }
    BigFloat(const BigFloat& other) {
        mpfr_init2(f_, mpfr_get_prec(other.f_));
        mpfr_set(f_, other.f_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& other) noexcept {
        mpfr_init2(f_, mpfr_get_prec(other.f_));
        mpfr_swap(f_, other.f_);
    }
    BigFloat& operator=(const BigFloat& other) {
        if (this != &other) {
            mpfr_set_prec(f_, mpfr_get_prec(other.f_));
            mpfr_set(f_, other.f_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& other) noexcept {
        mpfr_swap(f_, other.f_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(f_); }

    long precision() const { return mpfr_get_prec(f_); }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
        BigFloat r(join_precision(a, b));
        mpfr_add(r.f_, a.f_, b.f_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
        BigFloat r(join_precision(a, b));
        mpfr_sub(r.f_, a.f_, b.f_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
        BigFloat r(join_precision(a, b));
        mpfr_mul(r.f_, a.f_, b.f_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_neg(r.f_, a.f_, MPFR_RNDN);
        return r;
    }
    BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
    BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
    BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }
    BigFloat& operator/=(const BigFloat& o) { return *this = *this / o; }

    friend bool operator==(const BigFloat& a, const BigFloat& b) {
        return mpfr_cmp(a.f_, b.f_) == 0;
    }
    friend bool operator!=(const BigFloat& a, const BigFloat& b) {
        return !(a == b);
    }
    friend bool operator<(const BigFloat& a, const BigFloat& b) {
        return mpfr_cmp(a.f_, b.f_) < 0;
    }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) {
        return mpfr_cmp(a.f_, b.f_) <= 0;
    }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return b < a; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) {
        return b <= a;
    }

    BigFloat invert() const;
    BigFloat abs() const {
        BigFloat r(precision());
        mpfr_abs(r.f_, f_, MPFR_RNDN);
        return r;
    }
    // Integer power; negative exponents invert (0^negative is a DomainError).
    BigFloat pow(long e) const;
    // Square root; DomainError for negative arguments.
    BigFloat sqrt() const;
    // Natural log and base-10 log of |x|; DomainError at zero.
    BigFloat log_abs() const;
    double log10_abs() const;

    int sign() const { return mpfr_sgn(f_); }
    bool is_zero() const { return mpfr_zero_p(f_) != 0; }
    double to_double() const { return mpfr_get_d(f_, MPFR_RNDN); }

    mpfr_srcptr raw() const { return f_; }
    mpfr_ptr raw() { return f_; }

private:
    static long check_precision(long precision) {
        if (precision < min_precision)
            throw DomainError("float precision must be at least 64 bits, got " +
                              std::to_string(precision));
        return precision;
    }
    static long join_precision(const BigFloat& a, const BigFloat& b) {
        return a.precision() > b.precision() ? a.precision() : b.precision();
    }

    mpfr_t f_;
};

// A number that is either exact (Rational) or floating (BigFloat).
// Arithmetic mixing the two promotes the rational operand to the float's
// precision, so a computation stays exact until a float enters it.
class Scalar {
public:
    Scalar() : v_(Rational(0)) {}
    Scalar(Rational r) : v_(std::move(r)) {}       // NOLINT
    Scalar(BigFloat f) : v_(std::move(f)) {}       // NOLINT
    Scalar(long n) : v_(Rational(n)) {}            // NOLINT

    bool is_rational() const { return std::holds_alternative<Rational>(v_); }
    bool is_float() const { return std::holds_alternative<BigFloat>(v_); }
    const Rational& rational() const;
    const BigFloat& floating() const;

    bool is_zero() const;
    int sign() const;
    std::string to_string() const;
    double to_double() const;

private:
    std::variant<Rational, BigFloat> v_;
};

Scalar add(const Scalar& a, const Scalar& b);
Scalar sub(const Scalar& a, const Scalar& b);
Scalar mul(const Scalar& a, const Scalar& b);
Scalar div(const Scalar& a, const Scalar& b);
Scalar neg(const Scalar& a);
Scalar invert(const Scalar& a);
Scalar abs(const Scalar& a);
bool equal(const Scalar& a, const Scalar& b);

inline Scalar operator+(const Scalar& a, const Scalar& b) { return add(a, b); }
inline Scalar operator-(const Scalar& a, const Scalar& b) { return sub(a, b); }
inline Scalar operator*(const Scalar& a, const Scalar& b) { return mul(a, b); }
inline Scalar operator/(const Scalar& a, const Scalar& b) { return div(a, b); }
inline Scalar operator-(const Scalar& a) { return neg(a); }

// Convert to the other representation.
BigFloat to_float(const Scalar& a, long precision);
// log10 |a| as a double; -infinity for zero.  Used for magnitude estimates.
double log10_abs(const Scalar& a);

// Round-to-nearest-even decimal rendering with `digits` significant digits.
// Positional notation when 1e-4 <= |x| <= 1e8, scientific ("d.dddde<exp>")
// otherwise.  Zero renders as "0.000...e0" with `digits` digits.
std::string to_decimal(const Scalar& value, int digits);
std::string to_decimal(const Rational& value, int digits);
std::string to_decimal(const BigFloat& value, int digits);

}  // namespace gosper
