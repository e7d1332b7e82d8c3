#include <cmath>
#include <vector>

#include "doctest.h"
#include "euminima/bounds.hpp"
#include "euminima/enumeration.hpp"
#include "test_support.hpp"

using namespace euminima;
using testing::q;

namespace {

// log10 of the closed-form tau bound evaluated directly in doubles.
double tau_log10_oracle(double p, double r, double e) {
  const double n = (p - 1) * std::pow(p, r - 1) / e;
  const double ups = r * n - (std::pow(p, r - 1) - 1) / e - 1;
  const double c = n * (std::pow(p, r + 1) + std::pow(p, r) + 1 - e * e) / (12 * std::pow(p, r + 1));
  return std::log10(c) + (r - ups / n) * std::log10(p);
}

std::vector<std::uint64_t> primes_upto(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 3; p <= n; p += 2) {
    bool prime = true;
    for (std::uint64_t d = 3; d * d <= p; d += 2) prime = prime && p % d != 0;
    if (prime) out.push_back(p);
  }
  return out;
}

double to_d(const BigFloat& x) { return x.to_double(); }

}  // namespace

TEST_CASE("odd field bound examples") {
  const OddPPField f = OddPPField::make(3, 2, 1);
  CHECK(cor35_tau_bound(f) == PowerProduct(q(2)) * PowerProduct::prime_power(3, q(-1, 2)));
  const BoundReport rep = odd_bound(f);
  REQUIRE(rep.best_entry() != nullptr);
  CHECK(rep.best_entry()->source == BoundSource::Eq21);
  CHECK(*rep.best_entry()->value == PowerProduct(q(1)));
  CHECK(rep.disc.to_string() == "3^9");
  CHECK(rep.verdict("minkowski")->holds);
  CHECK(rep.verdict("minkowski")->in_hypothesis);
  CHECK(rep.verdict("omega_le_3^(-2/3)")->holds);
  CHECK_FALSE(odd_bound(OddPPField::make(7, 1, 1)).verdict("minkowski")->in_hypothesis);
  CHECK(to_string(BoundSource::Thm52ii) == "Thm52ii");
}

TEST_CASE("tau bound agrees with a floating point evaluation") {
  for (std::uint64_t p : {3, 5, 7, 11, 13, 31, 97}) {
    for (unsigned r = 1; r <= 3; ++r) {
      for (std::uint64_t e = 1; e < p; ++e) {
        if ((p - 1) % e != 0 || (r == 1 && e == p - 1)) continue;
        const OddPPField f = OddPPField::make(p, r, e);
        CHECK(cor35_tau_bound(f).log10_estimate() == doctest::Approx(tau_log10_oracle(p, r, e)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("eq21 and minkowski formulas") {
  CHECK(eq21_bound(PowerProduct(q(2)), 4, PowerProduct(q(16))) == PowerProduct(q(4)));
  CHECK(minkowski_value(2, FactoredInt::from_integer(4)) == PowerProduct(q(1, 2)));
  CHECK_THROWS_AS(eq21_bound(PowerProduct(q(1)), 0, PowerProduct(q(1))), std::invalid_argument);
}

TEST_CASE("tau bound is attained by the canonical model when e = 1") {
  for (std::uint64_t p : {3, 5, 7, 11, 13}) {
    for (unsigned r = 1; r <= 2; ++r) {
      const OddPPField f = OddPPField::make(p, r, 1);
      CHECK(tau(canonical_gram(f)) == cor35_tau_bound(f));
    }
  }
}

TEST_CASE("tau bound is sound against sampled covering radii") {
  for (auto [p, r, e] : std::vector<std::tuple<int, unsigned, int>>{{5, 1, 2}, {7, 1, 2}, {7, 1, 3}, {13, 1, 3}, {13, 1, 4}}) {
    const OddPPField f = OddPPField::make(p, r, e);
    const Lattice l = canonical_gram(f);
    const Rational lb = covering_lb(l, 100, 0);
    const PowerProduct observed = PowerProduct(lb) * PowerProduct(l.det()).pow(-q(1, static_cast<long>(l.rank())));
    CAPTURE(describe(f));
    CHECK(ppow_le(observed, cor35_tau_bound(f)));
  }
}

TEST_CASE("minkowski and omega verdicts over a grid") {
  for (std::uint64_t p : primes_upto(50)) {
    for (unsigned r = 2; r <= 3; ++r) {
      for (std::uint64_t e = 1; e < p; ++e) {
        if ((p - 1) % e != 0) continue;
        const OddPPField f = OddPPField::make(p, r, e);
        CAPTURE(describe(f));
        CHECK(minkowski_holds(f));
        CHECK(omega_within_bound(f));
      }
    }
  }
}

TEST_CASE("omega trend toward 1/(2 sqrt 3) for r = 2") {
  const PowerProduct limit = PowerProduct(q(1, 2)) * PowerProduct::prime_power(3, q(-1, 2));
  std::optional<PowerProduct> prev;
  for (std::uint64_t p : primes_upto(500)) {
    const PowerProduct w = omega_implied(OddPPField::make(p, 2, 1));
    CAPTURE(p);
    CHECK(ppow_compare(w, limit) == Ordering::Greater);
    if (prev) CHECK(ppow_compare(w, *prev) == Ordering::Less);
    prev = w;
  }
  CHECK(prev->log10_estimate() - limit.log10_estimate() < 5e-3);
}

TEST_CASE("two-power bounds") {
  const BoundReport imag = two_power_bound(TwoPowerField::make(4, TwoPowerVariant::Imag));
  CHECK(imag.bounds[0].source == BoundSource::PropP4b);
  CHECK(*imag.bounds[0].value == PowerProduct(q(49, 16)));
  CHECK(imag.best_entry()->source == BoundSource::PropP4b);
  CHECK_FALSE(imag.bounds[1].value.has_value());
  CHECK_FALSE(imag.verdict("minkowski")->in_hypothesis);
  const BoundReport real = two_power_bound(TwoPowerField::make(5, TwoPowerVariant::Real));
  CHECK(real.best_entry()->source == BoundSource::PropP4a);
  CHECK(*real.best_entry()->value == minkowski_value(8, disc(TwoPowerField::make(5, TwoPowerVariant::Real))));
  CHECK(real.verdict("minkowski")->holds);

  for (unsigned r = 3; r <= 20; ++r) {
    const TwoPowerField f = TwoPowerField::make(r, TwoPowerVariant::Imag);
    const std::uint64_t n = f.degree();
    const PowerProduct ratio = *two_power_bound(f).bounds[0].value / minkowski_value(n, disc(f));
    const double ln_env = std::log(to_d(cor43_envelope(std::max<std::uint64_t>(n, 2))));
    if (n >= 2) CHECK(ratio.log(128).estimate() == doctest::Approx(ln_env).epsilon(1e-12));
  }
}

TEST_CASE("epsilon and envelope values") {
  CHECK(to_d(epsilon_n(4)) == doctest::Approx(0.02085633529).epsilon(1e-9));
  CHECK(to_d(cor43_envelope(4)) == doctest::Approx(1.082757259).epsilon(1e-9));
  CHECK(to_d(cor43_limit()) == doctest::Approx(1.10139062981).epsilon(1e-11));
  CHECK(to_d(cor43_envelope(1000000)) == doctest::Approx(1.10139056097).epsilon(1e-11));
  // a_n = (1 - 1/(2n))^n in plain doubles.
  for (std::uint64_t n : {2, 3, 10, 100, 12345}) {
    const double a = std::pow(1 - 0.5 / n, static_cast<double>(n));
    CHECK(to_d(cor43_envelope(n)) == doctest::Approx(std::sqrt(2 * a)).epsilon(1e-12));
    const double eps = (std::log(a) + std::log(2.0)) / (n * std::log(2.0 * n) - std::log(2.0));
    CHECK(to_d(epsilon_n(n)) == doctest::Approx(eps).epsilon(1e-10));
    CHECK(cor42_identity_check(n).ok);
  }
  CHECK_THROWS_AS(epsilon_n(1), std::invalid_argument);
}

TEST_CASE("selector over cyclotomic bounds") {
  CHECK(normalize_conductor(10) == 5);
  CHECK(normalize_conductor(12) == 12);
  CHECK_THROWS_AS(normalize_conductor(2), std::invalid_argument);

  const BoundReport b60 = best_known_bound(60, false);
  CHECK(b60.best_entry()->source == BoundSource::Thm52i);
  CHECK_FALSE(b60.bounds[2].applicable);
  // 45 = 3^2 * 5 satisfies both branches; the smaller one wins.
  const BoundReport b45 = best_known_bound(45, false);
  CHECK(b45.bounds[1].applicable);
  CHECK(b45.bounds[2].applicable);
  CHECK(b45.best_entry()->source == BoundSource::Thm52ii);
  CHECK(ppow_compare(*b45.bounds[2].value, *b45.bounds[1].value) == Ordering::Less);
  CHECK(*best_known_bound(4, false).best_entry()->value == PowerProduct(q(1, 2)));
  CHECK(best_known_bound(7, false).best_entry()->source == BoundSource::Thm51);

  const BoundReport c5 = cyclotomic_bounds(5, false);
  CHECK(c5.best_entry()->source == BoundSource::Eq21);
  CHECK(*c5.best_entry()->value == PowerProduct(q(1, 4)));
  CHECK(c5.bounds[0].value->to_decimal(4) == "0.6988");
  CHECK(cyclotomic_bounds(10, false).disc == c5.disc);

  CHECK(real_subfield_hypothesis(27));
  CHECK_FALSE(real_subfield_hypothesis(24));
  CHECK(real_subfield_hypothesis(60));
  CHECK(real_subfield_hypothesis(28));
  CHECK(best_known_bound(9, true).verdict("minkowski")->in_hypothesis);
  CHECK_FALSE(best_known_bound(9, false).verdict("minkowski")->in_hypothesis);
  CHECK_FALSE(best_known_bound(15, true).bounds[0].applicable);
}

TEST_CASE("maximal real discriminant matches the closed form") {
  for (std::uint64_t m = 5; m <= 32; ++m) {
    if (m % 4 == 2 || m == 6) continue;
    CAPTURE(m);
    CHECK(best_known_bound(m, true).disc == maximal_real_disc_formula(m));
  }
}
