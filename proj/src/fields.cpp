#include "euminima/fields.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace euminima {
namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  for (; e > 0; e >>= 1) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
  }
  return r;
}

std::uint64_t checked_pow(std::uint64_t p, unsigned r) {
  std::uint64_t v = 1;
  for (unsigned i = 0; i < r; ++i) {
    if (v > (std::uint64_t{1} << 62) / p) throw std::invalid_argument("prime power exceeds 62 bits");
    v *= p;
  }
  return v;
}

std::map<Prime, unsigned long> small_factor(std::uint64_t m) { return factor_integer(BigInt(static_cast<unsigned long>(m))); }

// Trace table T[k] = Tr(zeta_M^k), k in [0, M).
std::vector<std::int64_t> trace_table(std::uint64_t m) {
  std::vector<std::int64_t> t(m);
  std::map<std::uint64_t, std::int64_t> by_gcd;
  for (std::uint64_t k = 0; k < m; ++k) {
    const std::uint64_t g = std::gcd(k, m);
    auto it = by_gcd.find(g);
    if (it == by_gcd.end()) it = by_gcd.emplace(g, trace_zeta(m, static_cast<std::int64_t>(k))).first;
    t[k] = it->second;
  }
  return t;
}

// Coordinates of zeta^a on the power basis 1, zeta, ..., zeta^(phi-1) of
// Z[zeta_{p^s}], added into v with multiplicity c. Uses
// Phi_{p^s}(x) = sum_{j<p} x^(j P), P = p^(s-1).
void add_power_coords(std::uint64_t a, long long c, std::uint64_t p, std::uint64_t big_p, std::vector<BigInt>& v) {
  const std::uint64_t phi = (p - 1) * big_p;
  if (a < phi) {
    v[a] += static_cast<long>(c);
    return;
  }
  const std::uint64_t t = a - phi;
  for (std::uint64_t j = 0; j + 1 < p; ++j) v[j * big_p + t] -= static_cast<long>(c);
}

// Row-style Hermite normal form over Z. Returns the nonzero rows.
std::vector<std::vector<BigInt>> hermite_rows(std::vector<std::vector<BigInt>> rows) {
  if (rows.empty()) return rows;
  const std::size_t cols = rows.front().size();
  std::size_t top = 0;
  for (std::size_t c = 0; c < cols && top < rows.size(); ++c) {
    while (true) {
      std::size_t piv = rows.size();
      for (std::size_t i = top; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        if (piv == rows.size() || abs(rows[i][c]) < abs(rows[piv][c])) piv = i;
      }
      if (piv == rows.size()) break;
      std::swap(rows[top], rows[piv]);
      bool done = true;
      for (std::size_t i = top + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[top][c].get_mpz_t());
        for (std::size_t j = c; j < cols; ++j) rows[i][j] -= q * rows[top][j];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[top][c] == 0) continue;
    if (rows[top][c] < 0) {
      for (auto& x : rows[top]) x = -x;
    }
    for (std::size_t i = 0; i < top; ++i) {
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[top][c].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= q * rows[top][j];
    }
    ++top;
  }
  rows.resize(top);
  return rows;
}

// Appends v to an echelon form over Q if independent.
bool insert_independent(std::vector<std::vector<Rational>>& echelon, std::vector<std::size_t>& pivots,
                        std::vector<Rational> v) {
  for (std::size_t r = 0; r < echelon.size(); ++r) {
    if (v[pivots[r]] == 0) continue;
    const Rational f = v[pivots[r]] / echelon[r][pivots[r]];
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (echelon[r][i] != 0) v[i] -= f * echelon[r][i];
    }
  }
  const auto nz = std::find_if(v.begin(), v.end(), [](const Rational& q) { return q != 0; });
  if (nz == v.end()) return false;
  pivots.push_back(static_cast<std::size_t>(nz - v.begin()));
  echelon.push_back(std::move(v));
  return true;
}

using Element = std::vector<std::pair<std::uint64_t, long long>>;

Element from_coords(const std::vector<BigInt>& coords) {
  Element e;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (coords[k] == 0) continue;
    if (!coords[k].fits_slong_p()) throw std::overflow_error("period_basis: coefficient exceeds 64 bits");
    e.emplace_back(k, coords[k].get_si());
  }
  return e;
}

Lattice gated(const SymMatrix& g, const OddPPField& f) {
  const Rational expected(BigInt(pow(BigInt(static_cast<unsigned long>(f.p)), f.upsilon().get_ui())));
  const Rational det = bareiss_det(g);
  if (det != expected) {
    throw DetMismatch("period basis of (" + std::to_string(f.p) + "," + std::to_string(f.r) + "," +
                      std::to_string(f.e) + ") has determinant " + to_string(det) + ", expected p^" +
                      to_string(f.upsilon()));
  }
  return Lattice(g);
}

}  // namespace

OddPPField OddPPField::make(std::uint64_t p, unsigned r, std::uint64_t e, bool allow_trivial) {
  if (p < 3 || p % 2 == 0 || !is_prime(p)) throw std::invalid_argument("OddPPField: p must be an odd prime");
  if (r < 1) throw std::invalid_argument("OddPPField: r must be at least 1");
  if (e < 1 || (p - 1) % e != 0) throw std::invalid_argument("OddPPField: e must divide p-1");
  checked_pow(p, r);
  OddPPField f{p, r, e};
  if (f.degree() < 2 && !allow_trivial) throw std::invalid_argument("OddPPField: degree must be at least 2");
  return f;
}

std::uint64_t OddPPField::conductor() const { return checked_pow(p, r); }
std::uint64_t OddPPField::p_pow_r_minus_1() const { return checked_pow(p, r - 1); }
std::uint64_t OddPPField::degree() const { return (p - 1) / e * p_pow_r_minus_1(); }
std::uint64_t OddPPField::gamma_copies() const { return (p_pow_r_minus_1() - 1) / e; }

BigInt OddPPField::upsilon() const {
  const BigInt n(static_cast<unsigned long>(degree()));
  return n * r - BigInt(static_cast<unsigned long>(gamma_copies())) - 1;
}

std::string to_string(TwoPowerVariant v) {
  switch (v) {
    case TwoPowerVariant::Cyclo: return "cyclo";
    case TwoPowerVariant::Real: return "real";
    case TwoPowerVariant::Imag: return "imag";
  }
  return "?";
}

TwoPowerVariant parse_two_power_variant(const std::string& s) {
  if (s == "cyclo") return TwoPowerVariant::Cyclo;
  if (s == "real") return TwoPowerVariant::Real;
  if (s == "imag") return TwoPowerVariant::Imag;
  throw std::invalid_argument("unknown variant '" + s + "' (expected cyclo, real or imag)");
}

TwoPowerField TwoPowerField::make(unsigned r, TwoPowerVariant variant) {
  if (r < 3 || r > 62) throw std::invalid_argument("TwoPowerField: r must be in [3, 62]");
  return TwoPowerField{r, variant};
}

std::uint64_t TwoPowerField::degree() const {
  return variant == TwoPowerVariant::Cyclo ? std::uint64_t{1} << (r - 1) : std::uint64_t{1} << (r - 2);
}

CycloField CycloField::make(std::uint64_t m, bool maximal_real) {
  if (m < 3 || m % 4 == 2) throw std::invalid_argument("CycloField: need m >= 3 and m != 2 (mod 4)");
  return CycloField{m, maximal_real};
}

std::uint64_t CycloField::degree() const { return maximal_real ? euler_phi(m) / 2 : euler_phi(m); }

std::uint64_t degree(const FieldDescriptor& field) {
  return std::visit([](const auto& f) { return f.degree(); }, field);
}

std::string describe(const FieldDescriptor& field) {
  std::ostringstream os;
  if (const auto* f = std::get_if<OddPPField>(&field)) {
    os << "odd(p=" << f->p << ",r=" << f->r << ",e=" << f->e << ")";
  } else if (const auto* t = std::get_if<TwoPowerField>(&field)) {
    os << "two-power(r=" << t->r << "," << to_string(t->variant) << ")";
  } else {
    const auto& c = std::get<CycloField>(field);
    os << "cyclotomic(m=" << c.m << (c.maximal_real ? ",real" : "") << ")";
  }
  return os.str();
}

std::uint64_t euler_phi(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("euler_phi: m must be positive");
  std::uint64_t phi = m;
  for (const auto& [p, k] : small_factor(m)) phi = phi / p * (p - 1);
  return phi;
}

int mobius(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("mobius: m must be positive");
  int mu = 1;
  for (const auto& [p, k] : small_factor(m)) {
    if (k > 1) return 0;
    mu = -mu;
  }
  return mu;
}

std::int64_t trace_zeta(std::uint64_t m, std::int64_t k) {
  if (m == 0) throw std::invalid_argument("trace_zeta: m must be positive");
  const auto mm = static_cast<std::int64_t>(m);
  const auto kr = static_cast<std::uint64_t>(((k % mm) + mm) % mm);
  const std::uint64_t d = m / std::gcd(kr, m);
  return mobius(d) * static_cast<std::int64_t>(euler_phi(m) / euler_phi(d));
}

std::uint64_t unit_group_generator(std::uint64_t p) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("unit_group_generator: p must be an odd prime");
  const auto qs = small_factor(p - 1);
  const std::uint64_t p2 = p * p;
  for (std::uint64_t g = 2; g < p; ++g) {
    bool primitive = true;
    for (const auto& [q, k] : qs) {
      if (powmod(g, (p - 1) / q, p) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive && powmod(g, p - 1, p2) != 1) return g;
  }
  throw std::logic_error("unit_group_generator: no generator found");
}

SymMatrix trace_gram(const TraceBasis& basis, Conjugation conjugation) {
  const std::size_t n = basis.elements.size();
  const std::uint64_t m = basis.modulus;
  const auto table = trace_table(m);
  SymMatrix g(n);
  const Rational div(BigInt(static_cast<unsigned long>(basis.divisor)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      BigInt s = 0;
      for (const auto& [a, ca] : basis.elements[i]) {
        for (const auto& [b, cb] : basis.elements[j]) {
          const std::uint64_t k = conjugation == Conjugation::Hermitian ? (a + m - b % m) % m : (a + b) % m;
          s += BigInt(static_cast<long>(ca)) * static_cast<long>(cb) * static_cast<long>(table[k]);
        }
      }
      g.set(i, j, Rational(s) / div);
    }
  }
  return g;
}

TraceBasis period_basis(const OddPPField& f) {
  const std::uint64_t m = f.conductor();
  const std::uint64_t big_p = f.p_pow_r_minus_1();
  const std::uint64_t phi = (f.p - 1) * big_p;
  const std::uint64_t n = f.degree();
  const std::uint64_t g = unit_group_generator(f.p);
  const std::uint64_t h0 = powmod(g, phi / f.e, m);
  std::vector<std::uint64_t> h(f.e);
  h[0] = 1;
  for (std::uint64_t k = 1; k < f.e; ++k) h[k] = mulmod(h[k - 1], h0, m);

  auto orbit = [&](std::uint64_t a) {
    std::map<std::uint64_t, long long> acc;
    for (std::uint64_t x : h) ++acc[mulmod(a, x, m)];
    return Element(acc.begin(), acc.end());
  };

  TraceBasis basis{m, f.e, {}};
  if (f.r == 1) {
    std::uint64_t gi = 1;
    for (std::uint64_t i = 0; i < n; ++i, gi = mulmod(gi, g, m)) basis.elements.push_back(orbit(gi));
    return basis;
  }

  // Generators Tr_{Q(zeta)/K}(zeta^a) over the integral basis zeta^a,
  // a = b + j P (0 <= b < P, 1 <= j < p), in power-basis coordinates.
  std::vector<std::uint64_t> exponents;
  for (std::uint64_t j = 1; j < f.p; ++j) {
    for (std::uint64_t b = 0; b < big_p; ++b) exponents.push_back(b + j * big_p);
  }
  std::sort(exponents.begin(), exponents.end());
  std::vector<std::vector<BigInt>> generators;
  std::vector<Element> orbits;
  for (std::uint64_t a : exponents) {
    Element o = orbit(a);
    std::vector<BigInt> v(phi, 0);
    for (const auto& [x, c] : o) add_power_coords(x, c, f.p, big_p, v);
    generators.push_back(std::move(v));
    orbits.push_back(std::move(o));
  }

  // First try n independent orbit sums taken in increasing exponent order.
  std::vector<std::vector<Rational>> echelon;
  std::vector<std::size_t> pivots;
  for (std::size_t k = 0; k < generators.size() && basis.elements.size() < n; ++k) {
    std::vector<Rational> v(generators[k].begin(), generators[k].end());
    if (insert_independent(echelon, pivots, std::move(v))) basis.elements.push_back(orbits[k]);
  }
  const Rational expected(pow(BigInt(static_cast<unsigned long>(f.p)), f.upsilon().get_ui()));
  if (basis.elements.size() == n && bareiss_det(trace_gram(basis)) == expected) return basis;

  // Otherwise the Hermite form of all generators is a Z-basis of their span.
  const auto rows = hermite_rows(std::move(generators));
  TraceBasis hnf{m, f.e, {}};
  for (const auto& row : rows) hnf.elements.push_back(from_coords(row));
  return hnf;
}

SymMatrix period_trace_matrix(const OddPPField& field, Conjugation conjugation) {
  return trace_gram(period_basis(field), conjugation);
}

Lattice period_gram(const OddPPField& field) { return gated(period_trace_matrix(field), field); }

Lattice canonical_gram(const OddPPField& f) {
  const Rational big_p(BigInt(static_cast<unsigned long>(f.p_pow_r_minus_1())));
  std::vector<Lattice> parts;
  const Lattice gamma = scale(make_A_dual_scaled(f.p - 1), big_p);
  for (std::uint64_t k = 0; k < f.gamma_copies(); ++k) parts.push_back(gamma);
  if (f.e == 1) {
    parts.push_back(gamma);
  } else {
    const Rational b = make_rational(BigInt(static_cast<unsigned long>(f.p)), BigInt(static_cast<unsigned long>(f.e)));
    parts.push_back(scale(make_L(b, f.d()), big_p * Rational(BigInt(static_cast<unsigned long>(f.e)))));
  }
  Lattice l = orth_sum(parts);
  const Rational expected(pow(BigInt(static_cast<unsigned long>(f.p)), f.upsilon().get_ui()));
  if (l.det() != expected) throw std::logic_error("canonical_gram: determinant is not p^upsilon");
  return l;
}

TraceBasis two_power_basis(const TwoPowerField& f) {
  const std::uint64_t m = std::uint64_t{1} << f.r;
  const std::uint64_t n = f.degree();
  TraceBasis basis{m, f.variant == TwoPowerVariant::Cyclo ? 1u : 2u, {}};
  for (std::uint64_t i = 0; i < n; ++i) {
    if (f.variant == TwoPowerVariant::Cyclo) {
      basis.elements.push_back({{i, 1}});
    } else if (i == 0) {
      basis.elements.push_back({{0, 1}});
    } else {
      const long long sign = (f.variant == TwoPowerVariant::Real || i % 2 == 0) ? 1 : -1;
      basis.elements.push_back({{i, 1}, {m - i, sign}});
    }
  }
  return basis;
}

SymMatrix two_power_trace_matrix(const TwoPowerField& field, Conjugation conjugation) {
  return trace_gram(two_power_basis(field), conjugation);
}

Lattice two_power_gram(const TwoPowerField& field) {
  const SymMatrix g = two_power_trace_matrix(field);
  const std::uint64_t n = field.degree();
  if (field.variant == TwoPowerVariant::Real) return Lattice(g);
  std::vector<Rational> diag(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const unsigned long v = field.variant == TwoPowerVariant::Cyclo || i == 0 ? n : 2 * n;
    diag[i] = Rational(v);
  }
  const Lattice model = make_diag(diag);
  if (model.gram() != g) {
    throw std::logic_error("two_power_gram: trace Gram differs from the diagonal model");
  }
  return model.with_provenance(Provenance::FieldTrace);
}

TraceBasis cyclo_basis(const CycloField& f) {
  const std::uint64_t n = f.degree();
  TraceBasis basis{f.m, f.maximal_real ? 2u : 1u, {}};
  for (std::uint64_t i = 0; i < n; ++i) {
    if (!f.maximal_real) {
      basis.elements.push_back({{i, 1}});
    } else if (i == 0) {
      basis.elements.push_back({{0, 1}});
    } else {
      basis.elements.push_back({{i, 1}, {f.m - i, 1}});
    }
  }
  return basis;
}

SymMatrix cyclo_trace_matrix(const CycloField& field, Conjugation conjugation) {
  return trace_gram(cyclo_basis(field), conjugation);
}

FactoredInt cyclotomic_disc_formula(std::uint64_t m) {
  const BigInt phi(static_cast<unsigned long>(euler_phi(m)));
  FactoredInt d;
  for (const auto& [p, k] : small_factor(m)) {
    d *= FactoredInt::prime_power(p, phi * static_cast<unsigned long>(k) - phi / static_cast<unsigned long>(p - 1));
  }
  return d;
}

FactoredInt maximal_real_disc_formula(std::uint64_t m) {
  // D_K = D_F^2 * N(relative discriminant); the relative discriminant of
  // Q(zeta_m)/Q(zeta_m)^+ has norm p for m = p^k (4 for m = 2^k) and 1 otherwise.
  FactoredInt dk = cyclotomic_disc_formula(m);
  const auto fac = small_factor(m);
  std::map<Prime, BigInt> ex = dk.factors();
  if (fac.size() == 1) ex[fac.begin()->first] -= fac.begin()->first == 2 ? 2 : 1;
  FactoredInt d;
  for (const auto& [p, k] : ex) {
    if (k % 2 != 0) throw std::logic_error("maximal_real_disc_formula: odd exponent");
    d *= FactoredInt::prime_power(p, k / 2);
  }
  return d;
}

FactoredInt disc(const FieldDescriptor& field) {
  constexpr std::uint64_t kGramLimit = 128;
  if (const auto* f = std::get_if<OddPPField>(&field)) return FactoredInt::prime_power(f->p, f->upsilon());
  if (const auto* t = std::get_if<TwoPowerField>(&field)) {
    const BigInt n(static_cast<unsigned long>(t->degree()));
    switch (t->variant) {
      case TwoPowerVariant::Cyclo: return FactoredInt::prime_power(2, n * (t->r - 1));
      case TwoPowerVariant::Imag: return FactoredInt::prime_power(2, n * (t->r - 2) + n - 1);
      case TwoPowerVariant::Real:
        if (t->degree() <= kGramLimit) {
          return FactoredInt::from_integer(bareiss_det(two_power_trace_matrix(*t)).get_num());
        }
        return maximal_real_disc_formula(std::uint64_t{1} << t->r);
    }
  }
  const auto& c = std::get<CycloField>(field);
  if (!c.maximal_real) return cyclotomic_disc_formula(c.m);
  if (c.degree() <= kGramLimit) return FactoredInt::from_integer(bareiss_det(cyclo_trace_matrix(c)).get_num());
  return maximal_real_disc_formula(c.m);
}

}  // namespace euminima
