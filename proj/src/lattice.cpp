#include "euminima/lattice.hpp"

#include <stdexcept>

namespace euminima {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Diag: return "diag";
    case Provenance::LFamily: return "L_family";
    case Provenance::Scaled: return "scaled";
    case Provenance::OrthSum: return "orth_sum";
    case Provenance::FieldTrace: return "field_trace";
  }
  return "?";
}

Lattice::Lattice(SymMatrix gram, std::optional<Rational> analytic_max, Provenance provenance)
    : gram_(std::move(gram)), analytic_max_(std::move(analytic_max)), provenance_(provenance) {
  const auto ldl = ldl_positive_definite(gram_);
  if (!ldl) throw std::invalid_argument("Lattice: Gram matrix is not positive definite");
  det_ = 1;
  for (const auto& d : ldl->d) det_ *= d;
  if (analytic_max_ && sgn(*analytic_max_) <= 0) throw std::invalid_argument("Lattice: analytic max must be positive");
}

Lattice::Lattice(Trusted, SymMatrix gram, Rational det, std::optional<Rational> analytic_max, Provenance provenance)
    : gram_(std::move(gram)), det_(std::move(det)), analytic_max_(std::move(analytic_max)), provenance_(provenance) {}

Lattice Lattice::with_provenance(Provenance p) const {
  Lattice copy = *this;
  copy.provenance_ = p;
  return copy;
}

Lattice make_diag(std::span<const Rational> diagonal) {
  if (diagonal.empty()) throw std::invalid_argument("make_diag: empty diagonal");
  SymMatrix g(diagonal.size());
  Rational sum = 0;
  for (std::size_t i = 0; i < diagonal.size(); ++i) {
    if (sgn(diagonal[i]) <= 0) throw std::invalid_argument("make_diag: entries must be positive");
    g.set(i, i, diagonal[i]);
    sum += diagonal[i];
  }
  return Lattice(std::move(g), sum / 4, Provenance::Diag);
}

Lattice make_L(const Rational& b, std::size_t m) {
  if (m == 0) throw std::invalid_argument("make_L: m must be positive");
  if (b <= Rational(static_cast<unsigned long>(m))) throw std::invalid_argument("make_L: requires b > m");
  SymMatrix g(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) g.set(i, j, i == j ? b - 1 : Rational(-1));
  }
  Lattice l(std::move(g), std::nullopt, Provenance::LFamily);
  const Rational expected = pow(b, static_cast<long>(m) - 1) * (b - Rational(static_cast<unsigned long>(m)));
  if (l.det() != expected) throw std::logic_error("make_L: determinant identity violated");
  return l;
}

Lattice make_A_dual_scaled(std::size_t m) {
  if (m == 0) throw std::invalid_argument("make_A_dual_scaled: m must be positive");
  const Lattice base = make_L(Rational(static_cast<unsigned long>(m + 1)), m);
  const auto mm = static_cast<unsigned long>(m);
  // For m = 1 the Gram is [1] and m(m+2)/12 = 1/4 agrees with the diagonal rule.
  return Lattice(base.gram(), make_rational(BigInt(mm * (mm + 2)), 12), Provenance::LFamily);
}

Lattice scale(const Lattice& lattice, const Rational& c) {
  if (sgn(c) <= 0) throw std::invalid_argument("scale: factor must be positive");
  std::optional<Rational> max;
  if (lattice.analytic_max()) max = *lattice.analytic_max() * c;
  if (c == 1) return lattice;
  return Lattice(lattice.gram().scaled(c), max, Provenance::Scaled);
}

Lattice orth_sum(std::span<const Lattice> parts) {
  if (parts.empty()) throw std::invalid_argument("orth_sum: empty list");
  if (parts.size() == 1) return parts.front();
  std::size_t n = 0;
  for (const auto& p : parts) n += p.rank();
  SymMatrix g(n);
  Rational det = 1;
  std::optional<Rational> max = Rational(0);
  std::size_t offset = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.rank(); ++i) {
      for (std::size_t j = i; j < p.rank(); ++j) g.set(offset + i, offset + j, p.gram()(i, j));
    }
    offset += p.rank();
    det *= p.det();
    if (max && p.analytic_max()) {
      *max += *p.analytic_max();
    } else {
      max.reset();
    }
  }
  // Block sums of positive definite blocks are positive definite.
  return Lattice(Lattice::Trusted{}, std::move(g), std::move(det), std::move(max), Provenance::OrthSum);
}

PowerProduct tau(const Lattice& lattice) {
  if (!lattice.analytic_max()) throw std::invalid_argument("tau: analytic max is not known for this lattice");
  const auto rank = static_cast<unsigned long>(lattice.rank());
  return PowerProduct(*lattice.analytic_max()) * PowerProduct(lattice.det()).pow(make_rational(-1, rank));
}

}  // namespace euminima
