#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace semifib {

// Canonical exact rational; gmp keeps gcd(num, den) = 1 and den > 0.
using Rational = mpq_class;
using BigInt = mpz_class;

inline int sign(const Rational& q) { return sgn(q); }

// gmpxx's two-argument constructor does not canonicalize; this does.
inline Rational ratio(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

// Accepts "p", "-p", "p/q". Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

Rational pow(const Rational& base, unsigned long exponent);

// Smallest power of two that is >= |q| (at least 1).
Rational power_of_two_above(const Rational& q);

}  // namespace semifib
