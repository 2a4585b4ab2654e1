#pragma once

#include <gmpxx.h>

#include <string>

namespace rrg {

// Exact arithmetic is GMP-backed throughout; mpq_class keeps values canonical
// (reduced, positive denominator) which makes == usable directly in tests.
using Rational = mpq_class;
using BigInt = mpz_class;

// C(n, k); zero when k < 0 or k > n or n < 0.
BigInt binom(long n, long k);

// Factorial and the odd double factorial (2k+1)!! = 1*3*5*...*(2k+1).
BigInt factorial(unsigned long n);
BigInt odd_double_factorial(long k);

// num/den as an exact rational; throws std::invalid_argument on zero den.
Rational make_rational(const BigInt& num, const BigInt& den);

// Accepts "p/q", an integer, or a plain decimal like "0.25" (converted
// exactly). Throws std::invalid_argument on anything else.
Rational parse_rational(const std::string& text);

// "p/q" with the denominator always spelled out ("2" prints as "2/1").
std::string fraction_string(const Rational& q);

// Shortest round-trippable-ish decimal rendering used by the CLI: %.12g,
// with a ".0" appended to bare integers so the reader can tell it is the
// floating value.
std::string decimal_string(double x);

}  // namespace rrg
