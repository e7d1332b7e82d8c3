#include "euminima/bounds.hpp"

#include <cmath>
#include <initializer_list>
#include <stdexcept>

namespace euminima {
namespace {

constexpr int kRenderDigits = 16;

Rational big(std::uint64_t v) { return Rational(BigInt(static_cast<unsigned long>(v))); }

BoundEntry exact_entry(BoundSource source, const PowerProduct& value, bool applicable, std::string note) {
  const double ln_mag = std::abs(value.log10_estimate()) * std::log(10.0);
  BoundEntry e;
  e.source = source;
  e.value = value;
  e.log = value.log(rendering_precision(ln_mag, kRenderDigits));
  e.applicable = applicable;
  e.note = std::move(note);
  return e;
}

BoundEntry float_entry(BoundSource source, const BigFloat& ln_value, std::string note) {
  BoundEntry e;
  e.source = source;
  e.log = LogInterval(ln_value, ln_value);
  e.note = std::move(note);
  return e;
}

// ln(2^-n sqrt(D)) for D given in factored form, at `prec` bits.
BigFloat ln_minkowski(std::uint64_t n, const FactoredInt& disc, mpfr_prec_t prec) {
  const LogInterval l = minkowski_value(n, disc).log(prec);
  BigFloat mid(prec);
  mpfr_add(mid.get(), l.lo().get(), l.hi().get(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  return mid;
}

bool pattern(const std::map<Prime, unsigned long>& f, std::initializer_list<std::pair<Prime, unsigned long>> req) {
  for (const auto& [p, k] : f) {
    bool allowed = false;
    for (const auto& [q, min] : req) allowed = allowed || q == p;
    if (!allowed) return false;
  }
  for (const auto& [q, min] : req) {
    const auto it = f.find(q);
    const unsigned long k = it == f.end() ? 0 : it->second;
    if (k < min) return false;
  }
  return true;
}

// ln a_n = n log1p(-1/(2n)).
BigFloat ln_a(std::uint64_t n, mpfr_prec_t prec) {
  BigFloat x(prec);
  mpfr_set_ui(x.get(), 1, MPFR_RNDN);
  mpfr_div_ui(x.get(), x.get(), 2 * n, MPFR_RNDN);
  mpfr_neg(x.get(), x.get(), MPFR_RNDN);
  mpfr_log1p(x.get(), x.get(), MPFR_RNDN);
  mpfr_mul_ui(x.get(), x.get(), n, MPFR_RNDN);
  return x;
}

}  // namespace

std::string to_string(BoundSource s) {
  switch (s) {
    case BoundSource::Eq21: return "Eq21";
    case BoundSource::Cor35: return "Cor35";
    case BoundSource::PropP4a: return "PropP4a";
    case BoundSource::PropP4b: return "PropP4b";
    case BoundSource::Cor42: return "Cor42";
    case BoundSource::Cor43: return "Cor43";
    case BoundSource::Thm51: return "Thm51";
    case BoundSource::Thm52i: return "Thm52i";
    case BoundSource::Thm52ii: return "Thm52ii";
    case BoundSource::Thm53: return "Thm53";
    case BoundSource::Minkowski: return "Minkowski";
  }
  return "?";
}

const Verdict* BoundReport::verdict(std::string_view name) const {
  for (const auto& v : verdicts) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

PowerProduct eq21_bound(const PowerProduct& tau, std::uint64_t n, const PowerProduct& sqrt_disc) {
  if (n == 0) throw std::invalid_argument("eq21_bound: n must be positive");
  if (tau.sign() <= 0) throw std::invalid_argument("eq21_bound: tau must be positive");
  return (tau / PowerProduct(big(n))).pow(big(n) / 2) * sqrt_disc;
}

PowerProduct cor35_tau_bound(const OddPPField& f) {
  const BigInt p(static_cast<unsigned long>(f.p));
  const BigInt pr = pow(p, f.r);
  const BigInt pr1 = pr * p;
  const BigInt e(static_cast<unsigned long>(f.e));
  const Rational n = big(f.degree());
  const Rational cofactor = n * make_rational(pr1 + pr + 1 - e * e, 12 * pr1);
  const Rational exponent = Rational(BigInt(f.r)) - Rational(f.upsilon()) / n;
  return PowerProduct(cofactor) * PowerProduct::prime_power(f.p, exponent);
}

PowerProduct minkowski_value(std::uint64_t n, const FactoredInt& disc) {
  return PowerProduct::prime_power(2, -big(n)) * PowerProduct(disc).pow(make_rational(1, 2));
}

bool minkowski_holds(const OddPPField& f) { return ppow_le(cor35_tau_bound(f), PowerProduct(big(f.degree()) / 4)); }

PowerProduct omega_implied(const OddPPField& f) {
  return (cor35_tau_bound(f) / PowerProduct(big(f.degree()))).pow(make_rational(1, 2));
}

bool omega_within_bound(const OddPPField& f) {
  return ppow_le(omega_implied(f), PowerProduct::prime_power(3, make_rational(-2, 3)));
}

BoundReport odd_bound(const OddPPField& f) {
  BoundReport rep;
  rep.field = f;
  rep.n = f.degree();
  rep.disc = disc(f);
  rep.tau_bound = cor35_tau_bound(f);
  const PowerProduct sqrt_d = PowerProduct::prime_power(f.p, Rational(f.upsilon()) / 2);
  rep.bounds.push_back(exact_entry(BoundSource::Eq21, eq21_bound(*rep.tau_bound, rep.n, sqrt_d), true,
                                   "tau from the closed-form bound"));
  rep.best = select_best(rep.bounds);
  rep.verdicts.push_back({"minkowski", minkowski_holds(f), f.r >= 2});
  rep.verdicts.push_back({"omega_le_3^(-2/3)", omega_within_bound(f), f.r >= 2});
  return rep;
}

BoundReport two_power_bound(const TwoPowerField& f) {
  BoundReport rep;
  rep.field = f;
  rep.n = f.degree();
  rep.disc = disc(f);
  const PowerProduct mink = minkowski_value(rep.n, rep.disc);
  if (f.variant != TwoPowerVariant::Imag) {
    rep.bounds.push_back(exact_entry(BoundSource::PropP4a, mink, true, ""));
    rep.best = select_best(rep.bounds);
    rep.verdicts.push_back({"minkowski", true, true});
    return rep;
  }
  const Rational n = big(rep.n);
  const PowerProduct p4b = PowerProduct::prime_power(2, -n) * PowerProduct(2 * n - 1).pow(n / 2);
  rep.bounds.push_back(exact_entry(BoundSource::PropP4b, p4b, true, ""));

  constexpr mpfr_prec_t kPrec = 128;
  const BigFloat eps = epsilon_n(rep.n, kPrec);
  const BigFloat base = ln_minkowski(rep.n, rep.disc, kPrec);
  // ln(2^-n sqrt(D)^(1+eps)) = ln(2^-n sqrt(D)) + eps ln(sqrt(D)).
  BigFloat half_ln_d(kPrec), cor42(kPrec);
  mpfr_set(half_ln_d.get(), PowerProduct(rep.disc).pow(make_rational(1, 2)).log(kPrec).lo().get(), MPFR_RNDN);
  mpfr_mul(cor42.get(), eps.get(), half_ln_d.get(), MPFR_RNDN);
  mpfr_add(cor42.get(), cor42.get(), base.get(), MPFR_RNDN);
  rep.bounds.push_back(float_entry(BoundSource::Cor42, cor42, "2^-n sqrt(D)^(1+eps(n))"));

  BigFloat cor43(kPrec);
  const BigFloat limit = cor43_limit(kPrec);
  mpfr_log(cor43.get(), limit.get(), MPFR_RNDN);
  mpfr_add(cor43.get(), cor43.get(), base.get(), MPFR_RNDN);
  rep.bounds.push_back(float_entry(BoundSource::Cor43, cor43, "sqrt(2) e^(-1/4) 2^-n sqrt(D)"));

  rep.best = select_best(rep.bounds);
  rep.verdicts.push_back({"minkowski", ppow_le(p4b, mink), false});
  return rep;
}

BigFloat epsilon_n(std::uint64_t n, mpfr_prec_t prec) {
  if (n < 2) throw std::invalid_argument("epsilon_n: n must be at least 2");
  BigFloat ln2(prec), num(prec), den(prec);
  mpfr_const_log2(ln2.get(), MPFR_RNDN);
  const BigFloat la = ln_a(n, prec);
  mpfr_add(num.get(), la.get(), ln2.get(), MPFR_RNDN);
  mpfr_set_ui(den.get(), 2 * n, MPFR_RNDN);
  mpfr_log(den.get(), den.get(), MPFR_RNDN);
  mpfr_mul_ui(den.get(), den.get(), n, MPFR_RNDN);
  mpfr_sub(den.get(), den.get(), ln2.get(), MPFR_RNDN);
  BigFloat eps(prec);
  mpfr_div(eps.get(), num.get(), den.get(), MPFR_RNDN);
  return eps;
}

IdentityCheck cor42_identity_check(std::uint64_t n, double tolerance) {
  constexpr mpfr_prec_t kPrec = 128;
  const BigFloat eps = epsilon_n(n, kPrec);
  BigFloat ln2(kPrec), ln_d(kPrec), t(kPrec), lhs(kPrec), rhs(kPrec), shift(kPrec);
  mpfr_const_log2(ln2.get(), MPFR_RNDN);
  // ln D = n ln n + (n - 1) ln 2
  mpfr_set_ui(ln_d.get(), n, MPFR_RNDN);
  mpfr_log(ln_d.get(), ln_d.get(), MPFR_RNDN);
  mpfr_mul_ui(ln_d.get(), ln_d.get(), n, MPFR_RNDN);
  mpfr_mul_ui(t.get(), ln2.get(), n - 1, MPFR_RNDN);
  mpfr_add(ln_d.get(), ln_d.get(), t.get(), MPFR_RNDN);
  mpfr_mul_ui(shift.get(), ln2.get(), n, MPFR_RNDN);

  mpfr_add_ui(t.get(), eps.get(), 1, MPFR_RNDN);
  mpfr_mul(lhs.get(), t.get(), ln_d.get(), MPFR_RNDN);
  mpfr_div_2ui(lhs.get(), lhs.get(), 1, MPFR_RNDN);
  mpfr_sub(lhs.get(), lhs.get(), shift.get(), MPFR_RNDN);

  mpfr_set_ui(rhs.get(), 2 * n - 1, MPFR_RNDN);
  mpfr_log(rhs.get(), rhs.get(), MPFR_RNDN);
  mpfr_mul_ui(rhs.get(), rhs.get(), n, MPFR_RNDN);
  mpfr_div_2ui(rhs.get(), rhs.get(), 1, MPFR_RNDN);
  mpfr_sub(rhs.get(), rhs.get(), shift.get(), MPFR_RNDN);

  IdentityCheck c;
  c.lhs_log = lhs.to_double();
  c.rhs_log = rhs.to_double();
  mpfr_sub(t.get(), lhs.get(), rhs.get(), MPFR_RNDN);
  mpfr_abs(t.get(), t.get(), MPFR_RNDN);
  c.relative_error = t.to_double() / std::abs(c.rhs_log);
  c.ok = c.relative_error < tolerance;
  return c;
}

BigFloat cor43_envelope(std::uint64_t n, mpfr_prec_t prec) {
  if (n < 2) throw std::invalid_argument("cor43_envelope: n must be at least 2");
  BigFloat v = ln_a(n, prec);
  mpfr_exp(v.get(), v.get(), MPFR_RNDN);
  mpfr_mul_2ui(v.get(), v.get(), 1, MPFR_RNDN);
  mpfr_sqrt(v.get(), v.get(), MPFR_RNDN);
  return v;
}

BigFloat cor43_limit(mpfr_prec_t prec) {
  BigFloat v(prec), s(prec);
  mpfr_set_si(v.get(), -1, MPFR_RNDN);
  mpfr_div_ui(v.get(), v.get(), 4, MPFR_RNDN);
  mpfr_exp(v.get(), v.get(), MPFR_RNDN);
  mpfr_sqrt_ui(s.get(), 2, MPFR_RNDN);
  mpfr_mul(v.get(), v.get(), s.get(), MPFR_RNDN);
  return v;
}

std::uint64_t normalize_conductor(std::uint64_t m) {
  if (m % 4 == 2) m /= 2;
  if (m < 3) throw std::invalid_argument("conductor must be at least 3 after normalization");
  return m;
}

ConductorMatch product_hypotheses(std::uint64_t m) {
  const auto f = factor_integer(BigInt(static_cast<unsigned long>(m)));
  ConductorMatch r;
  r.i = pattern(f, {{2, 0}, {3, 1}, {5, 1}}) || pattern(f, {{2, 2}, {5, 1}}) || pattern(f, {{2, 3}, {3, 1}});
  r.ii = pattern(f, {{2, 0}, {5, 1}, {7, 1}}) || pattern(f, {{2, 0}, {3, 2}, {5, 1}}) ||
         pattern(f, {{2, 2}, {3, 1}, {7, 1}});
  return r;
}

bool real_subfield_hypothesis(std::uint64_t m) {
  const auto f = factor_integer(BigInt(static_cast<unsigned long>(m)));
  return f.size() == 1 || (m % 4 == 0 && (m / 4) % 2 == 1);
}

std::optional<std::size_t> select_best(const std::vector<BoundEntry>& entries) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!entries[i].applicable || !entries[i].value) continue;
    if (!best || ppow_compare(*entries[i].value, *entries[*best].value) == Ordering::Less) best = i;
  }
  return best;
}

BoundReport best_known_bound(std::uint64_t m, bool maximal_real) {
  m = normalize_conductor(m);
  const CycloField field = CycloField::make(m, maximal_real);
  BoundReport rep;
  rep.field = field;
  rep.n = field.degree();
  rep.disc = disc(field);
  const Rational n = big(rep.n);
  const PowerProduct sqrt_d = PowerProduct(rep.disc).pow(make_rational(1, 2));
  const PowerProduct mink = minkowski_value(rep.n, rep.disc);
  if (maximal_real) {
    rep.bounds.push_back(exact_entry(BoundSource::Thm53, mink, real_subfield_hypothesis(m),
                                     rep.n <= 128 ? "disc from trace Gram" : "disc from closed form"));
  } else {
    const ConductorMatch h = product_hypotheses(m);
    rep.bounds.push_back(exact_entry(BoundSource::Thm51, mink, true, ""));
    rep.bounds.push_back(
        exact_entry(BoundSource::Thm52i, PowerProduct::prime_power(2, -3 * n / 2) * sqrt_d, h.i, ""));
    rep.bounds.push_back(exact_entry(
        BoundSource::Thm52ii, PowerProduct(Rational(12)).pow(-n / 2) * sqrt_d, h.ii, ""));
  }
  rep.best = select_best(rep.bounds);
  if (rep.best) {
    rep.verdicts.push_back({"minkowski", ppow_le(*rep.bounds[*rep.best].value, mink), maximal_real && real_subfield_hypothesis(m)});
  }
  return rep;
}

BoundReport cyclotomic_bounds(std::uint64_t m, bool maximal_real) {
  BoundReport rep = best_known_bound(m, maximal_real);
  m = std::get<CycloField>(rep.field).m;
  const auto f = factor_integer(BigInt(static_cast<unsigned long>(m)));
  if (f.size() == 1 && f.begin()->first != 2) {
    const std::uint64_t e = maximal_real ? 2 : 1;
    const auto p = f.begin()->first;
    const auto r = static_cast<unsigned>(f.begin()->second);
    if (((p - 1) / e) * (m / p) >= 2) {
      const OddPPField k = OddPPField::make(p, r, e);
      rep.tau_bound = cor35_tau_bound(k);
      const PowerProduct sqrt_d = PowerProduct::prime_power(p, Rational(k.upsilon()) / 2);
      rep.bounds.push_back(
          exact_entry(BoundSource::Eq21, eq21_bound(*rep.tau_bound, rep.n, sqrt_d), true, "tau from the closed-form bound"));
      rep.best = select_best(rep.bounds);
      rep.verdicts.clear();
      rep.verdicts.push_back({"minkowski", minkowski_holds(k), maximal_real && real_subfield_hypothesis(m)});
    }
  }
  return rep;
}

}  // namespace euminima
