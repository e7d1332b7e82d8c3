#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "euminima/rational.hpp"

namespace euminima {

// Dense symmetric matrix of rationals. Writes go through set(), which keeps
// (i,j) and (j,i) equal.
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t dimension);
  // Row-major literal; throws std::invalid_argument if not square or not symmetric.
  SymMatrix(std::initializer_list<std::initializer_list<Rational>> rows);
  static SymMatrix from_rows(const std::vector<std::vector<Rational>>& rows);
  static SymMatrix identity(std::size_t dimension);

  std::size_t dimension() const { return n_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, const Rational& v);

  bool is_diagonal() const;
  // Lowest common denominator of all entries.
  BigInt common_denominator() const;

  SymMatrix scaled(const Rational& c) const;
  // B^T M B for a square integer matrix B (row-major, n x n); a change of basis.
  SymMatrix congruence(const std::vector<std::vector<long long>>& basis) const;

  // q(x) = x^T M x.
  Rational quadratic_form(const std::vector<Rational>& x) const;

  std::string to_string() const;

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<Rational> a_;
};

// Exact determinant by fraction-free (Bareiss) elimination after clearing a
// common denominator. A zero determinant is a valid result.
Rational bareiss_det(const SymMatrix& m);
// Same, for an arbitrary square matrix given row-major.
Rational bareiss_det(std::vector<std::vector<Rational>> rows);

// Exact decomposition M = R^T diag(d) R with R unit upper triangular
// (mu(i,j) = R(i,j) for j > i). Succeeds iff M is positive definite, i.e. all
// leading principal minors are positive; the i-th minor is d_0 * ... * d_i.
struct LdlDecomposition {
  std::vector<Rational> d;
  std::vector<std::vector<Rational>> mu;  // mu[i][j], j > i
};
std::optional<LdlDecomposition> ldl_positive_definite(const SymMatrix& m);

}  // namespace euminima
