#include "euminima/factored_int.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "euminima/log_interval.hpp"

namespace euminima {
namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return r;
}

BigInt to_big(std::uint64_t v) {
  BigInt z;
  mpz_import(z.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return z;
}

bool fits_u64(const BigInt& z) { return z >= 0 && mpz_sizeinbase(z.get_mpz_t(), 2) <= 64; }

std::uint64_t to_u64(const BigInt& z) {
  std::uint64_t v = 0;
  std::size_t count = 0;
  mpz_export(&v, &count, -1, sizeof(v), 0, 0, z.get_mpz_t());
  return count == 0 ? 0 : v;
}

bool big_is_prime(const BigInt& n) {
  if (fits_u64(n)) return is_prime(to_u64(n));
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

// Brent's variant; returns a nontrivial factor of composite odd n.
BigInt pollard_rho(const BigInt& n) {
  for (unsigned long c = 1;; ++c) {
    BigInt x = 2, y = 2, d = 1, q = 1, ys;
    unsigned long r = 1;
    auto f = [&](const BigInt& v) {
      BigInt t = v * v + c;
      mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
      return t;
    };
    constexpr unsigned long kBatch = 128;
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(kBatch, r - k); ++i) {
          y = f(y);
          BigInt diff = x - y;
          q = q * abs(diff);
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += kBatch;
      } while (k < r && d == 1);
      r *= 2;
    } while (d == 1);
    if (d == n) {
      do {
        ys = f(ys);
        BigInt diff = x - ys;
        mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (d == 1);
    }
    if (d != n) return d;
  }
}

void factor_into(const BigInt& n, std::map<Prime, unsigned long>& out) {
  if (n == 1) return;
  if (big_is_prime(n)) {
    if (!fits_u64(n)) throw std::overflow_error("prime factor exceeds 64 bits");
    ++out[to_u64(n)];
    return;
  }
  const BigInt d = pollard_rho(n);
  factor_into(d, out);
  factor_into(BigInt(n / d), out);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for all 64-bit n.
  for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    std::uint64_t x = pow_mod(a % n, d, n);
    if (a % n == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::map<Prime, unsigned long> factor_integer(const BigInt& n) {
  if (n == 0) throw std::domain_error("cannot factor zero");
  BigInt m = abs(n);
  std::map<Prime, unsigned long> out;
  constexpr std::uint64_t kTrialLimit = 1 << 16;
  for (std::uint64_t p = 2; p < kTrialLimit; p += (p == 2 ? 1 : 2)) {
    if (m == 1) break;
    if (BigInt(to_big(p) * to_big(p)) > m) break;
    while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p))) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(p));
      ++out[p];
    }
  }
  factor_into(m, out);
  return out;
}

FactoredInt FactoredInt::from_integer(const BigInt& n) {
  FactoredInt f;
  f.sign_ = sgn(n) < 0 ? -1 : 1;
  for (const auto& [p, e] : factor_integer(n)) f.factors_[p] = e;
  return f;
}

FactoredInt FactoredInt::prime_power(Prime p, const BigInt& exponent) {
  if (!is_prime(p)) throw std::invalid_argument("prime_power: base is not prime");
  if (exponent < 0) throw std::invalid_argument("prime_power: negative exponent");
  FactoredInt f;
  if (exponent > 0) f.factors_[p] = exponent;
  return f;
}

double FactoredInt::log2_abs() const {
  double bits = 0;
  for (const auto& [p, e] : factors_) bits += e.get_d() * std::log2(static_cast<double>(p));
  return bits;
}

BigInt FactoredInt::value(double max_bits) const {
  if (log2_abs() > max_bits) throw std::length_error("FactoredInt too large to expand");
  BigInt v = sign_;
  for (const auto& [p, e] : factors_) v *= euminima::pow(to_big(p), e.get_ui());
  return v;
}

FactoredInt& FactoredInt::operator*=(const FactoredInt& other) {
  sign_ *= other.sign_;
  for (const auto& [p, e] : other.factors_) factors_[p] += e;
  return *this;
}

FactoredInt FactoredInt::pow(const BigInt& k) const {
  if (k < 0) throw std::invalid_argument("FactoredInt::pow: negative exponent");
  FactoredInt r;
  if (k == 0) return r;
  r.sign_ = (sign_ < 0 && mpz_odd_p(k.get_mpz_t())) ? -1 : 1;
  for (const auto& [p, e] : factors_) r.factors_[p] = e * k;
  return r;
}

std::string FactoredInt::to_string() const {
  std::string s = sign_ < 0 ? "-" : "";
  if (factors_.empty()) return s + "1";
  bool first = true;
  for (const auto& [p, e] : factors_) {
    if (!first) s += "*";
    first = false;
    s += std::to_string(p);
    if (e != 1) s += "^" + e.get_str();
  }
  return s;
}

Ordering compare(const FactoredInt& a, const FactoredInt& b) {
  if (a.sign() != b.sign()) return a.sign() < b.sign() ? Ordering::Less : Ordering::Greater;
  if (a == b) return Ordering::Equal;
  Ordering mag;
  constexpr double kExpandBits = 1 << 16;
  if (a.log2_abs() <= kExpandBits && b.log2_abs() <= kExpandBits) {
    const int c = cmp(abs(a.value()), abs(b.value()));
    mag = c < 0 ? Ordering::Less : (c > 0 ? Ordering::Greater : Ordering::Equal);
  } else {
    // |a|/|b| != 1 by unique factorization, so the certified log sign decides.
    std::map<Prime, Rational> quotient;
    for (const auto& [p, e] : a.factors()) quotient[p] += Rational(e);
    for (const auto& [p, e] : b.factors()) quotient[p] -= Rational(e);
    mag = certified_sign_of_log(quotient);
  }
  if (a.sign() > 0 || mag == Ordering::Equal) return mag;
  return mag == Ordering::Less ? Ordering::Greater : Ordering::Less;
}

}  // namespace euminima
