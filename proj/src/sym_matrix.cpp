#include "euminima/sym_matrix.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace euminima {

SymMatrix::SymMatrix(std::size_t dimension) : n_(dimension), a_(dimension * dimension) {
  if (dimension == 0) throw std::invalid_argument("SymMatrix: dimension must be positive");
}

SymMatrix::SymMatrix(std::initializer_list<std::initializer_list<Rational>> rows) : SymMatrix(rows.size()) {
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != n_) throw std::invalid_argument("SymMatrix: not square");
    std::size_t j = 0;
    for (const auto& v : row) a_[i * n_ + j++] = v;
    ++i;
  }
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t c = r + 1; c < n_; ++c) {
      if (a_[r * n_ + c] != a_[c * n_ + r]) throw std::invalid_argument("SymMatrix: not symmetric");
    }
  }
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  SymMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw std::invalid_argument("SymMatrix: not square");
    for (std::size_t j = 0; j < rows.size(); ++j) m.a_[i * m.n_ + j] = rows[i][j];
  }
  for (std::size_t r = 0; r < m.n_; ++r) {
    for (std::size_t c = r + 1; c < m.n_; ++c) {
      if (m(r, c) != m(c, r)) throw std::invalid_argument("SymMatrix: not symmetric");
    }
  }
  return m;
}

SymMatrix SymMatrix::identity(std::size_t dimension) {
  SymMatrix m(dimension);
  for (std::size_t i = 0; i < dimension; ++i) m.a_[i * dimension + i] = 1;
  return m;
}

void SymMatrix::set(std::size_t i, std::size_t j, const Rational& v) {
  a_[i * n_ + j] = v;
  a_[j * n_ + i] = v;
}

bool SymMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if ((*this)(i, j) != 0) return false;
    }
  }
  return true;
}

BigInt SymMatrix::common_denominator() const {
  BigInt l = 1;
  for (const auto& v : a_) l = lcm(l, BigInt(v.get_den()));
  return l;
}

SymMatrix SymMatrix::scaled(const Rational& c) const {
  SymMatrix m(n_);
  for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] * c;
  return m;
}

SymMatrix SymMatrix::congruence(const std::vector<std::vector<long long>>& basis) const {
  if (basis.size() != n_) throw std::invalid_argument("congruence: basis has wrong size");
  // T = M B, then B^T T.
  std::vector<Rational> t(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < n_; ++k) {
        if (basis[k][j] != 0) s += (*this)(i, k) * Rational(static_cast<long>(basis[k][j]));
      }
      t[i * n_ + j] = s;
    }
  }
  SymMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i; j < n_; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < n_; ++k) {
        if (basis[k][i] != 0) s += Rational(static_cast<long>(basis[k][i])) * t[k * n_ + j];
      }
      out.set(i, j, s);
    }
  }
  return out;
}

Rational SymMatrix::quadratic_form(const std::vector<Rational>& x) const {
  if (x.size() != n_) throw std::invalid_argument("quadratic_form: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (x[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      if (x[j] != 0) row += (*this)(i, j) * x[j];
    }
    s += x[i] * row;
  }
  return s;
}

std::string SymMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < n_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < n_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

Rational bareiss_det(std::vector<std::vector<Rational>> rows) {
  const std::size_t n = rows.size();
  if (n == 0) return 1;
  BigInt den = 1;
  for (const auto& row : rows) {
    if (row.size() != n) throw std::invalid_argument("bareiss_det: not square");
    for (const auto& v : row) den = lcm(den, BigInt(v.get_den()));
  }
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Rational v = rows[i][j] * Rational(den);
      a[i][j] = v.get_num();
    }
  }
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && a[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  const Rational det_scaled(BigInt(sign) * a[n - 1][n - 1]);
  return det_scaled / pow(Rational(den), static_cast<long>(n));
}

Rational bareiss_det(const SymMatrix& m) {
  const std::size_t n = m.dimension();
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = m(i, j);
  }
  return bareiss_det(std::move(rows));
}

std::optional<LdlDecomposition> ldl_positive_definite(const SymMatrix& m) {
  const std::size_t n = m.dimension();
  // Symmetric Gaussian elimination on a working copy; a[i][j] for j >= i.
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) a[i][j] = m(i, j);
  }
  LdlDecomposition out;
  out.d.resize(n);
  out.mu.assign(n, std::vector<Rational>(n));
  for (std::size_t k = 0; k < n; ++k) {
    if (sgn(a[k][k]) <= 0) return std::nullopt;
    out.d[k] = a[k][k];
    for (std::size_t j = k + 1; j < n; ++j) {
      if (a[k][j] != 0) out.mu[k][j] = a[k][j] / a[k][k];
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[k][i] == 0) continue;
      const Rational f = out.mu[k][i];
      for (std::size_t j = i; j < n; ++j) {
        if (a[k][j] != 0) a[i][j] -= f * a[k][j];
      }
    }
  }
  return out;
}

}  // namespace euminima
