#pragma once

// Enclosures [lo, hi] of the natural logarithm of a positive quantity, with
// outward rounding at every step. Used to render astronomically large bound
// values and, with precision escalation, to decide orderings that cannot be
// reduced to small integers.

#include <map>
#include <optional>
#include <string>

#include "euminima/big_float.hpp"
#include "euminima/factored_int.hpp"
#include "euminima/rational.hpp"

namespace euminima {

class LogInterval {
 public:
  // [0, 0]: the logarithm of 1.
  explicit LogInterval(mpfr_prec_t precision = 128);
  LogInterval(BigFloat lo, BigFloat hi);

  // ln of prod p^e.
  static LogInterval of_prime_powers(const std::map<Prime, Rational>& exponents, mpfr_prec_t precision);
  // ln q for q > 0.
  static LogInterval of_rational(const Rational& q, mpfr_prec_t precision);
  // ln of a positive integer given in factored form.
  static LogInterval of_factored(const FactoredInt& f, mpfr_prec_t precision);
  // Enclosure of an exactly known real given only by a rational value.
  static LogInterval point(const Rational& log_value, mpfr_prec_t precision);

  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  mpfr_prec_t precision() const { return lo_.precision(); }

  // hi - lo as a double (upward rounded).
  double width() const;
  // The midpoint as a double.
  double estimate() const;

  // Sign of the enclosed logarithm when the interval decides it; nullopt if
  // the interval straddles zero (or touches it without being [0,0]).
  std::optional<Ordering> sign() const;

  LogInterval operator+(const LogInterval& other) const;
  LogInterval operator-(const LogInterval& other) const;
  LogInterval scaled(const Rational& k) const;

  // exp(midpoint) with the given number of significant digits. Uses fixed
  // notation for moderate magnitudes and mantissa/exponent otherwise.
  std::string render_decimal(int digits) const;
  // log10 of the value, midpoint, given significant digits.
  std::string render_log10(int digits) const;
  double log10_estimate() const;

 private:
  BigFloat lo_;
  BigFloat hi_;
};

// Working precision (bits) adequate to render `digits` significant digits of
// a value whose natural log has magnitude about `log_magnitude`.
mpfr_prec_t rendering_precision(double log_magnitude, int digits);

// Decides prod p^e against 1 exactly. The exponent map must be nonzero
// somewhere (then the product differs from 1 by unique factorization) or the
// result is Equal. Escalates precision until the enclosure excludes zero.
Ordering certified_sign_of_log(const std::map<Prime, Rational>& exponents);

}  // namespace euminima
