#include <cmath>
#include <random>

#include "doctest.h"
#include "euminima/factored_int.hpp"
#include "euminima/log_interval.hpp"
#include "euminima/power_product.hpp"
#include "euminima/rational.hpp"
#include "euminima/sym_matrix.hpp"
#include "test_support.hpp"

using namespace euminima;
using testing::q;

namespace {

// ln of a PowerProduct by plain double summation; only trusted away from ties.
double naive_log(const PowerProduct& v) {
  double s = 0;
  for (const auto& [p, e] : v.exponents()) s += e.get_d() * std::log(static_cast<double>(p));
  return s;
}

PowerProduct random_pp(std::mt19937_64& rng, std::initializer_list<Prime> primes) {
  std::uniform_int_distribution<long> num(-12, 12), den(1, 6);
  PowerProduct v;
  for (Prime p : primes) v *= PowerProduct::prime_power(p, q(num(rng), den(rng)));
  return v;
}

}  // namespace

TEST_CASE("rationals are kept in lowest terms") {
  const Rational a = make_rational(BigInt(6), BigInt(-4));
  CHECK(to_string(a) == "-3/2");
  CHECK(a.get_den() > 0);
  CHECK(parse_rational("10/4") == q(5, 2));
  CHECK(parse_rational("-7") == q(-7));
  CHECK_THROWS_AS(make_rational(BigInt(1), BigInt(0)), std::domain_error);
  CHECK_THROWS_AS(parse_rational("x/2"), std::invalid_argument);
  CHECK(pow(q(2, 3), -2) == q(9, 4));
  CHECK(lcm(BigInt(4), BigInt(6)) == 12);
}

TEST_CASE("bareiss_det examples") {
  CHECK(bareiss_det(SymMatrix::identity(3)) == 1);
  CHECK(bareiss_det(SymMatrix{{2, -1}, {-1, 2}}) == 3);
  // b I - J with b = 3, m = 2
  CHECK(bareiss_det(SymMatrix{{2, -1}, {-1, 2}}) == testing::cofactor_det({{q(2), q(-1)}, {q(-1), q(2)}}));
  CHECK(bareiss_det(SymMatrix{{1, 2}, {2, 4}}) == 0);
  CHECK(bareiss_det(SymMatrix{{q(3, 2), q(-1)}, {q(-1), q(3, 2)}}) == q(5, 4));
}

TEST_CASE("bareiss_det agrees with cofactor expansion on random rational matrices") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = dim(rng);
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (auto& row : a) {
      for (auto& x : row) x = q(num(rng), den(rng));
    }
    if (t % 10 == 0 && n > 1) a[n - 1] = a[0];  // singular cases too
    CHECK(bareiss_det(a) == testing::cofactor_det(a));
    // The symmetric part goes through the SymMatrix overload.
    SymMatrix s(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) s.set(i, j, a[i][j] + a[j][i]);
    }
    CHECK(bareiss_det(s) == testing::cofactor_det(testing::dense(s)));
  }
}

TEST_CASE("SymMatrix construction and congruence") {
  CHECK_THROWS_AS((SymMatrix{{1, 2}, {3, 4}}), std::invalid_argument);
  const SymMatrix g{{2, -1}, {-1, 2}};
  const SymMatrix h = g.congruence({{1, 1}, {0, 1}});
  CHECK(h == SymMatrix{{2, 1}, {1, 2}});
  CHECK(bareiss_det(h) == bareiss_det(g));
  CHECK(g.quadratic_form({q(1), q(1)}) == 2);
  CHECK(SymMatrix{{q(1, 2), q(1, 3)}, {q(1, 3), q(1)}}.common_denominator() == 6);
  CHECK(ldl_positive_definite(g).has_value());
  CHECK_FALSE(ldl_positive_definite(SymMatrix{{1, 2}, {2, 1}}).has_value());
}

TEST_CASE("factor_integer and FactoredInt") {
  CHECK(factor_integer(BigInt(360)) == std::map<Prime, unsigned long>{{2, 3}, {3, 2}, {5, 1}});
  // Product of two primes above the trial-division range.
  const BigInt semi = BigInt(4294967291UL) * BigInt(4294967279UL);
  CHECK(factor_integer(semi) == std::map<Prime, unsigned long>{{4294967279UL, 1}, {4294967291UL, 1}});
  CHECK_THROWS_AS(factor_integer(BigInt(0)), std::domain_error);

  const FactoredInt f = FactoredInt::from_integer(BigInt(-720));
  CHECK(f.sign() == -1);
  CHECK(f.to_string() == "-2^4*3^2*5");
  CHECK(f.value() == -720);
  CHECK(FactoredInt::prime_power(3, 9).to_string() == "3^9");
  CHECK(FactoredInt().to_string() == "1");
  CHECK((FactoredInt::from_integer(12) * FactoredInt::from_integer(18)).value() == 216);
  CHECK(FactoredInt::from_integer(6).pow(3).value() == 216);

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> v(-100000, 100000);
  for (int t = 0; t < 200; ++t) {
    long a = v(rng), b = v(rng);
    if (a == 0 || b == 0) continue;
    CHECK(FactoredInt::from_integer(BigInt(a)).value() == a);
    CHECK(compare(FactoredInt::from_integer(BigInt(a)), FactoredInt::from_integer(BigInt(b))) ==
          compare(q(a), q(b)));
  }
}

TEST_CASE("FactoredInt comparison beyond expansion size") {
  // 2^1000000 < 3^630930 since 630930 log2(3) = 1000004.6...
  CHECK(compare(FactoredInt::prime_power(2, 1000000), FactoredInt::prime_power(3, 630930)) == Ordering::Less);
  CHECK(compare(FactoredInt::prime_power(3, 630929), FactoredInt::prime_power(2, 1000000)) == Ordering::Less);
  CHECK(compare(FactoredInt::prime_power(5, 10000000), FactoredInt::prime_power(5, 10000000)) == Ordering::Equal);
}

TEST_CASE("ppow_compare examples") {
  const PowerProduct cube_root = PowerProduct::prime_power(3, q(-2, 3));
  CHECK(ppow_compare(cube_root, PowerProduct(q(1, 2))) == Ordering::Less);
  CHECK(ppow_compare(cube_root, cube_root) == Ordering::Equal);
  const PowerProduct x = PowerProduct(q(2, 5)) * PowerProduct::prime_power(5, q(1, 4));
  CHECK(ppow_compare(x, PowerProduct(q(1))) == Ordering::Less);
  CHECK(x == PowerProduct(q(2)) * PowerProduct::prime_power(5, q(-3, 4)));
  CHECK_THROWS_AS(ppow_compare(PowerProduct(q(-1)), PowerProduct(q(1))), std::invalid_argument);
  CHECK_THROWS_AS(PowerProduct(q(0)), std::domain_error);
}

TEST_CASE("PowerProduct normal form and rendering") {
  const PowerProduct a = PowerProduct(q(12)) * PowerProduct::prime_power(3, q(-3, 2));
  CHECK(a.to_string() == "2^2 * 3^(-1/2)");
  CHECK(PowerProduct(q(1)).is_one());
  CHECK(PowerProduct(q(49, 16)).to_decimal() == "3.0625");
  CHECK(PowerProduct(q(4)).pow(q(1, 2)) == PowerProduct(q(2)));
  CHECK(PowerProduct(q(8)).pow(q(2, 3)).is_rational());
  CHECK(PowerProduct::prime_power(2, q(1, 2)).to_decimal(10) == "1.414213562");
  CHECK_THROWS(PowerProduct(q(-2)).pow(q(1, 2)));
  CHECK(PowerProduct(q(-2)).pow(q(3)) == PowerProduct(q(-8)));
}

TEST_CASE("ppow_compare is a total order matching numeric evaluation") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    const PowerProduct a = random_pp(rng, {2, 3});
    const PowerProduct b = random_pp(rng, {2, 5});
    const PowerProduct c = random_pp(rng, {3, 7});
    const Ordering ab = ppow_compare(a, b), ba = ppow_compare(b, a);
    CHECK((ab == Ordering::Less) == (ba == Ordering::Greater));
    CHECK((ab == Ordering::Equal) == (a == b));
    if (ab != Ordering::Greater && ppow_compare(b, c) != Ordering::Greater) {
      CHECK(ppow_compare(a, c) != Ordering::Greater);
    }
    const double gap = naive_log(a) - naive_log(b);
    if (std::abs(gap) > 1e-9) CHECK(ab == (gap < 0 ? Ordering::Less : Ordering::Greater));
  }
  // Single-prime bases: equal iff exponents agree.
  for (int t = 0; t < 100; ++t) {
    const PowerProduct a = random_pp(rng, {7});
    const PowerProduct b = random_pp(rng, {7});
    CHECK((ppow_compare(a, b) == Ordering::Equal) == (a.exponents() == b.exponents()));
  }
}

TEST_CASE("ppow_compare with huge exponent denominators") {
  // Denominators whose LCM exceeds the clearing cap still get an exact verdict.
  const PowerProduct a = PowerProduct::prime_power(97, q(193, 96)) * PowerProduct::prime_power(2, q(1, 1000003));
  const PowerProduct b = PowerProduct::prime_power(97, q(193, 96));
  CHECK(ppow_compare(a, b) == Ordering::Greater);
  CHECK(ppow_compare(b, a) == Ordering::Less);
}

TEST_CASE("LogInterval encloses the logarithm") {
  const LogInterval l = LogInterval::of_rational(q(49, 16), 128);
  BigFloat exact(256);
  mpfr_set_ui(exact.get(), 49, MPFR_RNDN);
  mpfr_div_ui(exact.get(), exact.get(), 16, MPFR_RNDN);
  mpfr_log(exact.get(), exact.get(), MPFR_RNDN);
  CHECK(mpfr_lessequal_p(l.lo().get(), exact.get()));
  CHECK(mpfr_lessequal_p(exact.get(), l.hi().get()));
  CHECK(l.render_decimal(12) == "3.0625");
  CHECK(l.sign() == Ordering::Greater);
  CHECK(LogInterval(128).sign() == Ordering::Equal);
  CHECK(LogInterval(128).render_log10(12) == "0");

  const LogInterval coarse = LogInterval::of_prime_powers({{97, q(131424912)}, {2, q(-43808304)}}, 64);
  const LogInterval fine = LogInterval::of_prime_powers({{97, q(131424912)}, {2, q(-43808304)}}, 256);
  CHECK(fine.width() <= coarse.width());
  CHECK(fine.render_decimal(6).find("e+") != std::string::npos);
}

TEST_CASE("certified_sign_of_log") {
  CHECK(certified_sign_of_log({}) == Ordering::Equal);
  CHECK(certified_sign_of_log({{2, q(1)}, {3, q(-1, 2)}}) == Ordering::Greater);  // 2 > sqrt(3)
  CHECK(certified_sign_of_log({{2, q(-3)}, {3, q(2)}}) == Ordering::Greater);     // 9 > 8
  CHECK(certified_sign_of_log({{2, q(3)}, {3, q(-2)}}) == Ordering::Less);
}
