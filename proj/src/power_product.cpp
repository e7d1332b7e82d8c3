#include "euminima/power_product.hpp"

#include <cmath>
#include <stdexcept>

namespace euminima {
namespace {

BigInt floor_div(const BigInt& n, const BigInt& d) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

BigInt u64_to_big(std::uint64_t v) {
  BigInt z;
  mpz_import(z.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return z;
}

}  // namespace

PowerProduct::PowerProduct(const Rational& coefficient) {
  if (coefficient == 0) throw std::domain_error("PowerProduct cannot represent zero");
  sign_ = sgn(coefficient) < 0 ? -1 : 1;
  for (const auto& [p, e] : factor_integer(coefficient.get_num())) exponents_[p] += Rational(e);
  if (coefficient.get_den() != 1) {
    for (const auto& [p, e] : factor_integer(coefficient.get_den())) exponents_[p] -= Rational(e);
  }
  normalize();
}

PowerProduct::PowerProduct(const FactoredInt& f) : sign_(f.sign()) {
  for (const auto& [p, e] : f.factors()) exponents_[p] = Rational(e);
  normalize();
}

PowerProduct PowerProduct::prime_power(Prime p, const Rational& exponent) {
  if (!is_prime(p)) throw std::invalid_argument("PowerProduct::prime_power: base is not prime");
  PowerProduct r;
  r.exponents_[p] = exponent;
  r.normalize();
  return r;
}

void PowerProduct::normalize() {
  for (auto it = exponents_.begin(); it != exponents_.end();) {
    if (it->second == 0) {
      it = exponents_.erase(it);
    } else {
      it->second.canonicalize();
      ++it;
    }
  }
}

bool PowerProduct::is_rational() const {
  for (const auto& [p, e] : exponents_) {
    if (e.get_den() != 1) return false;
  }
  return true;
}

Rational PowerProduct::coefficient(double max_bits) const {
  double bits = 0;
  for (const auto& [p, e] : exponents_) bits += std::abs(e.get_d()) * std::log2(static_cast<double>(p));
  if (bits > max_bits) throw std::length_error("PowerProduct coefficient too large to expand");
  BigInt num = sign_, den = 1;
  for (const auto& [p, e] : exponents_) {
    const BigInt f = floor_div(e.get_num(), e.get_den());
    if (f > 0) num *= euminima::pow(u64_to_big(p), f.get_ui());
    if (f < 0) den *= euminima::pow(u64_to_big(p), BigInt(-f).get_ui());
  }
  return make_rational(num, den);
}

PowerProduct PowerProduct::radical() const {
  PowerProduct r;
  for (const auto& [p, e] : exponents_) {
    const BigInt f = floor_div(e.get_num(), e.get_den());
    r.exponents_[p] = e - Rational(f);
  }
  r.normalize();
  return r;
}

PowerProduct& PowerProduct::operator*=(const PowerProduct& other) {
  sign_ *= other.sign_;
  for (const auto& [p, e] : other.exponents_) exponents_[p] += e;
  normalize();
  return *this;
}

PowerProduct& PowerProduct::operator/=(const PowerProduct& other) {
  sign_ *= other.sign_;
  for (const auto& [p, e] : other.exponents_) exponents_[p] -= e;
  normalize();
  return *this;
}

PowerProduct PowerProduct::pow(const Rational& k) const {
  PowerProduct r;
  if (k == 0) return r;
  if (sign_ < 0) {
    if (k.get_den() != 1) throw std::domain_error("non-integer power of a negative value");
    r.sign_ = mpz_odd_p(k.get_num_mpz_t()) ? -1 : 1;
  }
  for (const auto& [p, e] : exponents_) r.exponents_[p] = e * k;
  r.normalize();
  return r;
}

LogInterval PowerProduct::log(mpfr_prec_t precision) const {
  if (sign_ < 0) throw std::domain_error("log of a negative PowerProduct");
  return LogInterval::of_prime_powers(exponents_, precision);
}

double PowerProduct::log10_estimate() const { return log(64).log10_estimate(); }

std::string PowerProduct::to_decimal(int digits) const {
  const double mag = log(64).estimate();
  std::string s = log(rendering_precision(mag, digits)).render_decimal(digits);
  return sign_ < 0 ? "-" + s : s;
}

std::string PowerProduct::to_log10_string(int digits) const {
  const double mag = log(64).estimate();
  return log(rendering_precision(mag, digits)).render_log10(digits);
}

std::string PowerProduct::to_string() const {
  std::string s = sign_ < 0 ? "-" : "";
  if (exponents_.empty()) return s + "1";
  bool first = true;
  for (const auto& [p, e] : exponents_) {
    if (!first) s += " * ";
    first = false;
    s += std::to_string(p);
    if (e == 1) continue;
    if (e.get_den() == 1 && e > 0) {
      s += "^" + e.get_str();
    } else {
      s += "^(" + e.get_str() + ")";
    }
  }
  return s;
}

Ordering ppow_compare(const PowerProduct& a, const PowerProduct& b) {
  if (a.sign() <= 0 || b.sign() <= 0) throw std::invalid_argument("ppow_compare: values must be positive");
  const PowerProduct q = a / b;
  if (q.is_one()) return Ordering::Equal;

  BigInt n = 1;
  for (const auto& [p, e] : q.exponents()) {
    n = lcm(n, BigInt(e.get_den()));
    if (n > kMaxClearingLcm) break;
  }
  if (n > kMaxClearingLcm) return certified_sign_of_log(q.exponents());

  // q^n = num / den with integer exponents on both sides.
  FactoredInt num, den;
  for (const auto& [p, e] : q.exponents()) {
    const BigInt k = BigInt(e.get_num()) * (n / BigInt(e.get_den()));
    if (k > 0) num *= FactoredInt::prime_power(p, k);
    if (k < 0) den *= FactoredInt::prime_power(p, BigInt(-k));
  }
  return compare(num, den);
}

}  // namespace euminima
