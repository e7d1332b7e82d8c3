#pragma once

// Integers kept as sign * prod p^e. Discriminants of the fields handled here
// have exponents in the hundreds of millions, so values are never expanded
// unless a caller explicitly asks for it.

#include <cstdint>
#include <map>
#include <string>

#include "euminima/rational.hpp"

namespace euminima {

using Prime = std::uint64_t;

// Full factorization of |n| (n != 0). Trial division, then Pollard rho for
// large cofactors. Throws std::domain_error for n == 0 and std::overflow_error
// if a prime factor does not fit in 64 bits.
std::map<Prime, unsigned long> factor_integer(const BigInt& n);

bool is_prime(std::uint64_t n);

class FactoredInt {
 public:
  FactoredInt() = default;  // the value 1

  static FactoredInt from_integer(const BigInt& n);
  static FactoredInt prime_power(Prime p, const BigInt& exponent);

  int sign() const { return sign_; }
  const std::map<Prime, BigInt>& factors() const { return factors_; }
  bool is_one() const { return sign_ == 1 && factors_.empty(); }

  // log2 of |value|, rounded up; a cheap size estimate.
  double log2_abs() const;

  // Expands the product. Throws std::length_error above max_bits.
  BigInt value(double max_bits = 1 << 22) const;

  FactoredInt& operator*=(const FactoredInt& other);
  friend FactoredInt operator*(FactoredInt a, const FactoredInt& b) { return a *= b; }
  FactoredInt pow(const BigInt& k) const;

  // "3^9", "2^4*3^2*5", "-7", "1".
  std::string to_string() const;

  friend bool operator==(const FactoredInt&, const FactoredInt&) = default;

 private:
  int sign_ = 1;
  std::map<Prime, BigInt> factors_;
};

// Exact comparison of the signed values.
Ordering compare(const FactoredInt& a, const FactoredInt& b);

}  // namespace euminima
