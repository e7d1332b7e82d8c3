#pragma once

// Arbitrary-precision integers and rationals (GMP-backed).

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace euminima {

using BigInt = mpz_class;
using Rational = mpq_class;

enum class Ordering { Less, Equal, Greater };

std::string to_string(Ordering o);

// n/d in lowest terms with positive denominator. Throws std::domain_error if d == 0.
Rational make_rational(const BigInt& n, const BigInt& d = 1);

// Accepts "a" or "a/b" with optional sign.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

inline Ordering compare(const Rational& a, const Rational& b) {
  const int c = cmp(a, b);
  return c < 0 ? Ordering::Less : (c > 0 ? Ordering::Greater : Ordering::Equal);
}

BigInt lcm(const BigInt& a, const BigInt& b);
BigInt pow(const BigInt& base, unsigned long exponent);
Rational pow(const Rational& base, long exponent);

}  // namespace euminima
