#pragma once

#include <optional>

#include "gosper/constants.hpp"
#include "gosper/numeric.hpp"

namespace gosper {

// Reference values for the constants the product schemes converge to,
// computed by routes independent of the matrix products: Euler-Maclaurin
// tail summation for zeta-type sums, the digamma recurrence + asymptotic
// series for the parameterized families, and Machin's arctangent formula
// for pi.  `digits` is the requested accuracy in decimal digits; every
// routine carries guard digits internally and returns a value whose error
// is far below 10^-digits.

// Exact Bernoulli number B_n (B_1 = -1/2); cached, thread-safe.
const Rational& bernoulli(unsigned n);

BigFloat zeta_ref(long s, int digits);
BigFloat eta_ref(long s, int digits);
// hurwitz_ref(s, z) = sum_{n>=1} (n+z)^-s; z must not be a negative integer
// (hurwitz_ref(s, 0) = zeta(s)).
BigFloat hurwitz_ref(long s, const Rational& z, int digits);

// Digamma psi(x); x must not be zero or a negative integer.
BigFloat digamma_ref(const Rational& x, int digits);
BigFloat digamma_ref(const BigFloat& x, int digits);

BigFloat pi_ref(int digits);
BigFloat euler_gamma_ref(int digits);

// sum_{n>=1} 2/(n^2 - a n - b^2), via the digamma reflection of the partial
// fractions; (0,0) degenerates to 2*zeta(2).
BigFloat tauraso_closed_form(const Rational& a, const Rational& b, int digits);
// sum_{n>=1} 4n/(n^4 - a^2 n^2 - b^4); (0,0) degenerates to 4*zeta(3).
BigFloat tauraso_quartic_closed_form(const Rational& a, const Rational& b,
                                     int digits);

// Value of a resolved target constant.
BigFloat oracle_value(const ResolvedConstant& c, int digits);
// Exact value where one exists (finite harmonic sums).
std::optional<Rational> oracle_exact(const ResolvedConstant& c);

}  // namespace gosper
