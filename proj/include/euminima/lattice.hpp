#pragma once

// Lattices given by a positive definite rational Gram matrix.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "euminima/power_product.hpp"
#include "euminima/rational.hpp"
#include "euminima/sym_matrix.hpp"

namespace euminima {

enum class Provenance { Diag, LFamily, Scaled, OrthSum, FieldTrace };

std::string to_string(Provenance p);

class Lattice {
 public:
  // Verifies positive definiteness through exact leading principal minors and
  // throws std::invalid_argument otherwise. `analytic_max`, when given, is the
  // squared covering radius max(L,q) for this Gram matrix.
  explicit Lattice(SymMatrix gram, std::optional<Rational> analytic_max = std::nullopt,
                   Provenance provenance = Provenance::FieldTrace);

  const SymMatrix& gram() const { return gram_; }
  std::size_t rank() const { return gram_.dimension(); }
  const Rational& det() const { return det_; }
  const std::optional<Rational>& analytic_max() const { return analytic_max_; }
  Provenance provenance() const { return provenance_; }

  Lattice with_provenance(Provenance p) const;

 private:
  struct Trusted {};
  Lattice(Trusted, SymMatrix gram, Rational det, std::optional<Rational> analytic_max, Provenance provenance);

  friend Lattice orth_sum(std::span<const Lattice> parts);

  SymMatrix gram_;
  Rational det_;
  std::optional<Rational> analytic_max_;
  Provenance provenance_;
};

// Orthogonal sum of rank-1 lattices; the deep hole is the half-sum of the basis,
// so max = (1/4) * sum d_i.
Lattice make_diag(std::span<const Rational> diagonal);

// Gram b*I_m - J_m, positive definite iff b > m; det = b^(m-1) (b - m).
Lattice make_L(const Rational& b, std::size_t m);

// L_{m+1,m}, the integral model of A_m^# used throughout, with
// max = m(m+2)/12.
Lattice make_A_dual_scaled(std::size_t m);

// (L, c q): Gram times c, det times c^rank, max times c.
Lattice scale(const Lattice& lattice, const Rational& c);

// Block-diagonal Gram. max is the sum of the parts' max when all are known.
Lattice orth_sum(std::span<const Lattice> parts);

// Hermite-like thickness max / det^(1/rank). Requires analytic_max.
PowerProduct tau(const Lattice& lattice);

}  // namespace euminima
