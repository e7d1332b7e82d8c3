#include "euminima/log_interval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace euminima {
namespace {

void set_q(mpfr_ptr out, const Rational& q, mpfr_rnd_t rnd) { mpfr_set_q(out, q.get_mpq_t(), rnd); }

// out = [a_lo, a_hi] * [b_lo, b_hi] where b > 0.
void mul_by_positive(const BigFloat& a_lo, const BigFloat& a_hi, const BigFloat& b_lo, const BigFloat& b_hi,
                     BigFloat& out_lo, BigFloat& out_hi) {
  if (mpfr_sgn(a_lo.get()) >= 0) {
    mpfr_mul(out_lo.get(), a_lo.get(), b_lo.get(), MPFR_RNDD);
  } else {
    mpfr_mul(out_lo.get(), a_lo.get(), b_hi.get(), MPFR_RNDD);
  }
  if (mpfr_sgn(a_hi.get()) >= 0) {
    mpfr_mul(out_hi.get(), a_hi.get(), b_hi.get(), MPFR_RNDU);
  } else {
    mpfr_mul(out_hi.get(), a_hi.get(), b_lo.get(), MPFR_RNDU);
  }
}

std::string snprintf_mpfr(const char* fmt, int digits, mpfr_srcptr x) {
  const int len = mpfr_snprintf(nullptr, 0, fmt, digits, x);
  std::vector<char> buf(static_cast<std::size_t>(len) + 1);
  mpfr_snprintf(buf.data(), buf.size(), fmt, digits, x);
  return std::string(buf.data(), static_cast<std::size_t>(len));
}

}  // namespace

LogInterval::LogInterval(mpfr_prec_t precision) : lo_(precision), hi_(precision) {}

LogInterval::LogInterval(BigFloat lo, BigFloat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (mpfr_cmp(lo_.get(), hi_.get()) > 0) throw std::invalid_argument("LogInterval: lo > hi");
}

LogInterval LogInterval::of_prime_powers(const std::map<Prime, Rational>& exponents, mpfr_prec_t precision) {
  LogInterval acc(precision);
  BigFloat ln_lo(precision), ln_hi(precision), e_lo(precision), e_hi(precision), t_lo(precision), t_hi(precision);
  for (const auto& [p, e] : exponents) {
    if (e == 0) continue;
    mpfr_set_ui(ln_lo.get(), p, MPFR_RNDN);  // exact: precision >= 64
    mpfr_set_ui(ln_hi.get(), p, MPFR_RNDN);
    mpfr_log(ln_lo.get(), ln_lo.get(), MPFR_RNDD);
    mpfr_log(ln_hi.get(), ln_hi.get(), MPFR_RNDU);
    set_q(e_lo.get(), e, MPFR_RNDD);
    set_q(e_hi.get(), e, MPFR_RNDU);
    mul_by_positive(e_lo, e_hi, ln_lo, ln_hi, t_lo, t_hi);
    mpfr_add(acc.lo_.get(), acc.lo_.get(), t_lo.get(), MPFR_RNDD);
    mpfr_add(acc.hi_.get(), acc.hi_.get(), t_hi.get(), MPFR_RNDU);
  }
  return acc;
}

LogInterval LogInterval::of_rational(const Rational& q, mpfr_prec_t precision) {
  if (sgn(q) <= 0) throw std::domain_error("log of a non-positive rational");
  BigFloat n_lo(precision), n_hi(precision), d_lo(precision), d_hi(precision);
  mpfr_set_z(n_lo.get(), q.get_num_mpz_t(), MPFR_RNDD);
  mpfr_set_z(n_hi.get(), q.get_num_mpz_t(), MPFR_RNDU);
  mpfr_set_z(d_lo.get(), q.get_den_mpz_t(), MPFR_RNDD);
  mpfr_set_z(d_hi.get(), q.get_den_mpz_t(), MPFR_RNDU);
  mpfr_log(n_lo.get(), n_lo.get(), MPFR_RNDD);
  mpfr_log(n_hi.get(), n_hi.get(), MPFR_RNDU);
  mpfr_log(d_lo.get(), d_lo.get(), MPFR_RNDD);
  mpfr_log(d_hi.get(), d_hi.get(), MPFR_RNDU);
  BigFloat lo(precision), hi(precision);
  mpfr_sub(lo.get(), n_lo.get(), d_hi.get(), MPFR_RNDD);
  mpfr_sub(hi.get(), n_hi.get(), d_lo.get(), MPFR_RNDU);
  return LogInterval(std::move(lo), std::move(hi));
}

LogInterval LogInterval::of_factored(const FactoredInt& f, mpfr_prec_t precision) {
  if (f.sign() < 0) throw std::domain_error("log of a negative integer");
  std::map<Prime, Rational> exps;
  for (const auto& [p, e] : f.factors()) exps[p] = Rational(e);
  return of_prime_powers(exps, precision);
}

LogInterval LogInterval::point(const Rational& log_value, mpfr_prec_t precision) {
  BigFloat lo(precision), hi(precision);
  set_q(lo.get(), log_value, MPFR_RNDD);
  set_q(hi.get(), log_value, MPFR_RNDU);
  return LogInterval(std::move(lo), std::move(hi));
}

double LogInterval::width() const {
  BigFloat w(precision());
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return mpfr_get_d(w.get(), MPFR_RNDU);
}

double LogInterval::estimate() const {
  BigFloat m(precision() + 1);
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m.to_double();
}

std::optional<Ordering> LogInterval::sign() const {
  if (mpfr_sgn(lo_.get()) > 0) return Ordering::Greater;
  if (mpfr_sgn(hi_.get()) < 0) return Ordering::Less;
  if (mpfr_zero_p(lo_.get()) && mpfr_zero_p(hi_.get())) return Ordering::Equal;
  return std::nullopt;
}

LogInterval LogInterval::operator+(const LogInterval& other) const {
  const mpfr_prec_t prec = std::max(precision(), other.precision());
  BigFloat lo(prec), hi(prec);
  mpfr_add(lo.get(), lo_.get(), other.lo_.get(), MPFR_RNDD);
  mpfr_add(hi.get(), hi_.get(), other.hi_.get(), MPFR_RNDU);
  return LogInterval(std::move(lo), std::move(hi));
}

LogInterval LogInterval::operator-(const LogInterval& other) const {
  const mpfr_prec_t prec = std::max(precision(), other.precision());
  BigFloat lo(prec), hi(prec);
  mpfr_sub(lo.get(), lo_.get(), other.hi_.get(), MPFR_RNDD);
  mpfr_sub(hi.get(), hi_.get(), other.lo_.get(), MPFR_RNDU);
  return LogInterval(std::move(lo), std::move(hi));
}

LogInterval LogInterval::scaled(const Rational& k) const {
  const mpfr_prec_t prec = precision();
  BigFloat k_lo(prec), k_hi(prec), lo(prec), hi(prec);
  set_q(k_lo.get(), k, MPFR_RNDD);
  set_q(k_hi.get(), k, MPFR_RNDU);
  // Interval product: take the extreme of the four corner products.
  BigFloat c(prec);
  bool first = true;
  for (const BigFloat* a : {&lo_, &hi_}) {
    for (const BigFloat* b : {&k_lo, &k_hi}) {
      mpfr_mul(c.get(), a->get(), b->get(), MPFR_RNDD);
      if (first || mpfr_cmp(c.get(), lo.get()) < 0) mpfr_set(lo.get(), c.get(), MPFR_RNDD);
      mpfr_mul(c.get(), a->get(), b->get(), MPFR_RNDU);
      if (first || mpfr_cmp(c.get(), hi.get()) > 0) mpfr_set(hi.get(), c.get(), MPFR_RNDU);
      first = false;
    }
  }
  return LogInterval(std::move(lo), std::move(hi));
}

double LogInterval::log10_estimate() const { return estimate() / std::log(10.0); }

std::string LogInterval::render_log10(int digits) const {
  const mpfr_prec_t prec = precision() + 2;
  BigFloat mid(prec), ln10(prec);
  mpfr_add(mid.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  if (mpfr_zero_p(mid.get())) return "0";
  mpfr_set_ui(ln10.get(), 10, MPFR_RNDN);
  mpfr_log(ln10.get(), ln10.get(), MPFR_RNDN);
  mpfr_div(mid.get(), mid.get(), ln10.get(), MPFR_RNDN);
  return snprintf_mpfr("%.*Rg", digits, mid.get());
}

std::string LogInterval::render_decimal(int digits) const {
  const mpfr_prec_t prec = precision() + 2;
  BigFloat mid(prec), ln10(prec), l10(prec);
  mpfr_add(mid.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  mpfr_set_ui(ln10.get(), 10, MPFR_RNDN);
  mpfr_log(ln10.get(), ln10.get(), MPFR_RNDN);
  mpfr_div(l10.get(), mid.get(), ln10.get(), MPFR_RNDN);
  if (std::fabs(l10.to_double()) < 15.0) {
    BigFloat v(prec);
    mpfr_exp(v.get(), mid.get(), MPFR_RNDN);
    return snprintf_mpfr("%.*Rg", digits, v.get());
  }
  BigFloat expo(prec), frac(prec), mant(prec);
  mpfr_floor(expo.get(), l10.get());
  mpfr_sub(frac.get(), l10.get(), expo.get(), MPFR_RNDN);
  mpfr_exp10(mant.get(), frac.get(), MPFR_RNDN);
  long e10 = mpfr_get_si(expo.get(), MPFR_RNDN);
  std::string m = snprintf_mpfr("%.*Rf", digits - 1, mant.get());
  if (m.rfind("10.", 0) == 0) {
    mpfr_div_ui(mant.get(), mant.get(), 10, MPFR_RNDN);
    ++e10;
    m = snprintf_mpfr("%.*Rf", digits - 1, mant.get());
  }
  return m + "e" + (e10 >= 0 ? "+" : "") + std::to_string(e10);
}

mpfr_prec_t rendering_precision(double log_magnitude, int digits) {
  const double mag_bits = std::log2(std::fabs(log_magnitude) + 2.0);
  return static_cast<mpfr_prec_t>(96 + 4 * digits + std::ceil(mag_bits));
}

Ordering certified_sign_of_log(const std::map<Prime, Rational>& exponents) {
  bool trivial = true;
  for (const auto& [p, e] : exponents) trivial = trivial && e == 0;
  if (trivial) return Ordering::Equal;
  for (mpfr_prec_t prec = 64; prec <= (1 << 22); prec *= 2) {
    const auto s = LogInterval::of_prime_powers(exponents, prec).sign();
    if (s && *s != Ordering::Equal) return *s;
  }
  throw std::runtime_error("certified_sign_of_log: precision escalation exhausted");
}

}  // namespace euminima
