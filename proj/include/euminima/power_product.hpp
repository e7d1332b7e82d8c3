#pragma once

// Exact nonzero values of the form sign * prod p^(a/b), a/b rational.
//
// A rational coefficient is absorbed into the exponent map on construction,
// so every value has a unique normal form: two PowerProducts are equal iff
// their signs and exponent maps agree. Raising to a rational power only
// rescales exponents, which is what keeps values like (tau/n)^(n/2) * sqrt(D)
// with n in the tens of millions cheap to form.

#include <map>
#include <string>

#include "euminima/factored_int.hpp"
#include "euminima/log_interval.hpp"
#include "euminima/rational.hpp"

namespace euminima {

class PowerProduct {
 public:
  PowerProduct() = default;  // 1
  explicit PowerProduct(const Rational& coefficient);
  explicit PowerProduct(const FactoredInt& f);

  static PowerProduct prime_power(Prime p, const Rational& exponent);

  int sign() const { return sign_; }
  const std::map<Prime, Rational>& exponents() const { return exponents_; }
  bool is_one() const { return sign_ == 1 && exponents_.empty(); }

  // The rational part sign * prod p^floor(e) and the residual prod p^{e - floor(e)}.
  Rational coefficient(double max_bits = 1 << 20) const;
  PowerProduct radical() const;

  // True when every exponent is an integer, i.e. the value is rational.
  bool is_rational() const;

  PowerProduct& operator*=(const PowerProduct& other);
  PowerProduct& operator/=(const PowerProduct& other);
  friend PowerProduct operator*(PowerProduct a, const PowerProduct& b) { return a *= b; }
  friend PowerProduct operator/(PowerProduct a, const PowerProduct& b) { return a /= b; }

  // Real power. Non-integer powers require a positive value.
  PowerProduct pow(const Rational& k) const;

  LogInterval log(mpfr_prec_t precision) const;
  double log10_estimate() const;

  // Decimal value with `digits` significant digits (12 by default).
  std::string to_decimal(int digits = 12) const;
  std::string to_log10_string(int digits = 12) const;
  // Exact form, e.g. "2 * 3^(-1/2)".
  std::string to_string() const;

  friend bool operator==(const PowerProduct&, const PowerProduct&) = default;

 private:
  void normalize();

  int sign_ = 1;
  std::map<Prime, Rational> exponents_;
};

// Upper bound on the exponent-denominator LCM for which comparisons are
// reduced to integer comparisons.
inline constexpr unsigned long kMaxClearingLcm = 1'000'000;

// Exact ordering of two positive values. Throws std::invalid_argument if
// either is not positive.
//
// The quotient a/b is raised to the LCM N of its exponent denominators, which
// leaves a comparison of two FactoredInt values. When N exceeds
// kMaxClearingLcm the quotient's log is enclosed directly at escalating
// precision; a verdict is never returned from an enclosure containing zero.
Ordering ppow_compare(const PowerProduct& a, const PowerProduct& b);

inline bool ppow_le(const PowerProduct& a, const PowerProduct& b) { return ppow_compare(a, b) != Ordering::Greater; }

}  // namespace euminima
