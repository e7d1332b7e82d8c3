#include "euminima/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <string>

namespace euminima {
namespace {

using Real = long double;
using i128 = __int128;

constexpr Real kRelativeSlack = 1e-9L;

BigInt from_i128(i128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  const auto hi = static_cast<std::uint64_t>(u >> 64);
  const auto lo = static_cast<std::uint64_t>(u);
  BigInt z;
  const std::uint64_t words[2] = {lo, hi};
  mpz_import(z.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
  return neg ? BigInt(-z) : z;
}

Real to_real(const Rational& q) { return static_cast<Real>(q.get_d()); }

// Connected components of the nonzero pattern of the Gram matrix.
std::vector<std::vector<std::size_t>> orthogonal_blocks(const SymMatrix& g) {
  const std::size_t n = g.dimension();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (g(i, j) != 0) parent[find(i)] = find(j);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

SymMatrix sub_matrix(const SymMatrix& g, const std::vector<std::size_t>& idx) {
  SymMatrix s(idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a; b < idx.size(); ++b) s.set(a, b, g(idx[a], idx[b]));
  }
  return s;
}

// Fincke-Pohst style search tree over one positive definite Gram matrix.
class Engine {
 public:
  Engine(const SymMatrix& gram, std::uint64_t budget, std::uint64_t* nodes)
      : n_(gram.dimension()), budget_(budget), nodes_(nodes) {
    const auto ldl = ldl_positive_definite(gram);
    if (!ldl) throw std::invalid_argument("enumeration: Gram matrix is not positive definite");
    d_.resize(n_);
    mu_.assign(n_, std::vector<Real>(n_, 0));
    for (std::size_t i = 0; i < n_; ++i) {
      d_[i] = to_real(ldl->d[i]);
      for (std::size_t j = i + 1; j < n_; ++j) mu_[i][j] = to_real(ldl->mu[i][j]);
    }
    den_ = gram.common_denominator();
    gint_.assign(n_, std::vector<BigInt>(n_));
    gll_.assign(n_, std::vector<long long>(n_));
    small_ = true;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        const Rational v = gram(i, j) * Rational(den_);
        gint_[i][j] = v.get_num();
        if (mpz_sizeinbase(gint_[i][j].get_mpz_t(), 2) > 40) small_ = false;
        if (small_) gll_[i][j] = gint_[i][j].get_si();
      }
    }
    Real maxd = 0;
    for (Real v : d_) maxd = std::max(maxd, v);
    abs_slack_ = kRelativeSlack * (1 + maxd);
  }

  std::size_t rank() const { return n_; }
  const BigInt& denominator() const { return den_; }

  Real slack(Real bound) const { return bound * (1 + kRelativeSlack) + abs_slack_; }

  // log of the Gaussian-heuristic node count for a search of squared radius `bound`.
  double predicted_log_nodes(Real bound) const {
    double total = -INFINITY;
    double log_det_tail = 0;
    for (std::size_t k = 1; k <= n_; ++k) {
      log_det_tail += 0.5 * std::log(static_cast<double>(d_[n_ - k]));
      const double half_k = 0.5 * static_cast<double>(k);
      const double log_vol = half_k * std::log(M_PI) - std::lgamma(half_k + 1) + half_k * std::log(static_cast<double>(bound));
      const double term = log_vol - log_det_tail;
      total = std::max(total, term) + std::log1p(std::exp(std::min(total, term) - std::max(total, term)));
    }
    return total;
  }

  // Exact x^T G x for integer x, times den.
  BigInt scaled_norm(const std::vector<long long>& x) const {
    if (small_) {
      long long xmax = 0;
      for (long long v : x) xmax = std::max(xmax, v < 0 ? -v : v);
      if (xmax < (1LL << 30)) {
        i128 s = 0;
        for (std::size_t i = 0; i < n_; ++i) {
          if (x[i] == 0) continue;
          i128 row = 0;
          for (std::size_t j = 0; j < n_; ++j) row += static_cast<i128>(gll_[i][j]) * x[j];
          s += row * x[i];
        }
        return from_i128(s);
      }
    }
    BigInt s = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (x[i] == 0) continue;
      BigInt row = 0;
      for (std::size_t j = 0; j < n_; ++j) row += gint_[i][j] * static_cast<long>(x[j]);
      s += row * static_cast<long>(x[i]);
    }
    return s;
  }

  // Exact q(x - t) where t = tt / tden.
  Rational distance(const std::vector<long long>& x, const std::vector<BigInt>& tt, const BigInt& tden) const {
    std::vector<BigInt> w(n_);
    for (std::size_t i = 0; i < n_; ++i) w[i] = tden * static_cast<long>(x[i]) - tt[i];
    BigInt s = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (w[i] == 0) continue;
      BigInt row = 0;
      for (std::size_t j = 0; j < n_; ++j) {
        if (w[j] != 0) row += gint_[i][j] * w[j];
      }
      s += row * w[i];
    }
    return make_rational(s, den_ * tden * tden);
  }

  // Visits every integer x with float-estimated q(x - t) <= bound(). The
  // bound is re-read before each child, so callers may shrink it.
  void search(const std::vector<Real>& t, const std::function<Real()>& bound,
              const std::function<void(const std::vector<long long>&)>& leaf) {
    std::vector<long long> x(n_, 0);
    if (n_ == 0) return;
    descend(static_cast<long>(n_) - 1, 0, t, x, bound, leaf);
  }

  // Nearest-plane rounding, a starting point for CVP.
  std::vector<long long> babai(const std::vector<Real>& t) const {
    std::vector<long long> x(n_, 0);
    for (long i = static_cast<long>(n_) - 1; i >= 0; --i) x[i] = std::llround(center(i, t, x));
    return x;
  }

 private:
  Real center(long i, const std::vector<Real>& t, const std::vector<long long>& x) const {
    Real c = t[i];
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < n_; ++j) c -= mu_[i][j] * (static_cast<Real>(x[j]) - t[j]);
    return c;
  }

  void tick() {
    if (++*nodes_ > budget_) {
      throw BudgetExceeded("enumeration node budget exceeded (" + std::to_string(budget_) + " nodes)");
    }
  }

  void descend(long i, Real partial, const std::vector<Real>& t, std::vector<long long>& x,
               const std::function<Real()>& bound, const std::function<void(const std::vector<long long>&)>& leaf) {
    const Real c = center(i, t, x);
    const Real di = d_[i];
    // up walks right from ceil(c), down walks left from ceil(c) - 1; the
    // closer of the two is visited next, so children come in order of |x - c|.
    long long up = static_cast<long long>(std::ceil(c));
    long long down = up - 1;
    bool up_alive = true, down_alive = true;
    while (up_alive || down_alive) {
      const Real du = static_cast<Real>(up) - c;
      const Real dd = c - static_cast<Real>(down);
      const bool take_up = up_alive && (!down_alive || du <= dd);
      const long long pick = take_up ? up : down;
      const Real y = static_cast<Real>(pick) - c;
      const Real p = partial + di * y * y;
      if (p > slack(bound())) {
        if (take_up) {
          up_alive = false;
        } else {
          down_alive = false;
        }
        continue;
      }
      tick();
      x[i] = pick;
      if (i == 0) {
        leaf(x);
      } else {
        descend(i - 1, p, t, x, bound, leaf);
      }
      if (take_up) {
        ++up;
      } else {
        --down;
      }
    }
    x[i] = 0;
  }

  std::size_t n_;
  std::vector<Real> d_;
  std::vector<std::vector<Real>> mu_;
  std::vector<std::vector<BigInt>> gint_;
  std::vector<std::vector<long long>> gll_;
  bool small_ = false;
  BigInt den_;
  Real abs_slack_ = 0;
  std::uint64_t budget_;
  std::uint64_t* nodes_;
};

struct ScaledTarget {
  std::vector<BigInt> tt;
  BigInt tden = 1;
  std::vector<Real> tf;
};

ScaledTarget scale_target(std::span<const Rational> t) {
  ScaledTarget s;
  for (const auto& v : t) s.tden = lcm(s.tden, BigInt(v.get_den()));
  for (const auto& v : t) {
    s.tt.push_back(BigInt(v.get_num()) * (s.tden / BigInt(v.get_den())));
    s.tf.push_back(to_real(v));
  }
  return s;
}

bool lex_less(const std::vector<long long>& a, const std::vector<long long>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

CvpResult cvp_block(Engine& engine, std::span<const Rational> target) {
  const ScaledTarget st = scale_target(target);
  CvpResult best;
  best.coords = engine.babai(st.tf);
  best.dist2 = engine.distance(best.coords, st.tt, st.tden);
  Real best_f = to_real(best.dist2);
  engine.search(
      st.tf, [&] { return best_f; },
      [&](const std::vector<long long>& x) {
        const Rational d = engine.distance(x, st.tt, st.tden);
        const int c = cmp(d, best.dist2);
        if (c < 0 || (c == 0 && lex_less(x, best.coords))) {
          best.coords = x;
          best.dist2 = d;
          best_f = to_real(d);
        }
      });
  return best;
}

// Solves A y = b exactly; nullopt if A is singular.
std::optional<std::vector<Rational>> solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv][k] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      const Rational f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<Rational> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = b[i] / a[i][i];
  return y;
}

// Point equidistant (under q) from the rank+1 nearest affinely independent
// lattice points around x, if they can be found.
std::optional<std::vector<Rational>> equidistant_point(const Lattice& lattice, std::span<const Rational> x,
                                                       const Rational& d0) {
  const std::size_t n = lattice.rank();
  const SymMatrix& g = lattice.gram();
  if (d0 == 0) return std::nullopt;
  Rational radius = d0 * 4;
  for (int attempt = 0; attempt < 6; ++attempt, radius *= 2) {
    const auto pts = points_within(lattice, x, radius);
    if (pts.size() < n + 1) continue;
    std::vector<std::vector<long long>> chosen{pts.front().coords};
    std::vector<std::vector<Rational>> echelon;  // reduced difference vectors
    std::vector<std::size_t> pivots;
    for (std::size_t k = 1; k < pts.size() && chosen.size() < n + 1; ++k) {
      std::vector<Rational> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = Rational(static_cast<long>(pts[k].coords[i] - chosen[0][i]));
      for (std::size_t r = 0; r < echelon.size(); ++r) {
        if (v[pivots[r]] == 0) continue;
        const Rational f = v[pivots[r]] / echelon[r][pivots[r]];
        for (std::size_t i = 0; i < n; ++i) v[i] -= f * echelon[r][i];
      }
      const auto nz = std::find_if(v.begin(), v.end(), [](const Rational& q) { return q != 0; });
      if (nz == v.end()) continue;
      pivots.push_back(static_cast<std::size_t>(nz - v.begin()));
      echelon.push_back(std::move(v));
      chosen.push_back(pts[k].coords);
    }
    if (chosen.size() < n + 1) continue;
    // 2 (c_i - c_0)^T G y = q(c_i) - q(c_0).
    auto as_rational = [&](const std::vector<long long>& c) {
      std::vector<Rational> r(n);
      for (std::size_t i = 0; i < n; ++i) r[i] = Rational(static_cast<long>(c[i]));
      return r;
    };
    const auto c0 = as_rational(chosen[0]);
    const Rational q0 = g.quadratic_form(c0);
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    std::vector<Rational> b(n);
    for (std::size_t k = 1; k <= n; ++k) {
      const auto ck = as_rational(chosen[k]);
      for (std::size_t j = 0; j < n; ++j) {
        Rational s = 0;
        for (std::size_t i = 0; i < n; ++i) s += (ck[i] - c0[i]) * g(i, j);
        a[k - 1][j] = 2 * s;
      }
      b[k - 1] = g.quadratic_form(ck) - q0;
    }
    return solve(std::move(a), std::move(b));
  }
  return std::nullopt;
}

}  // namespace

std::uint64_t default_node_budget() {
  constexpr std::uint64_t kDefault = 100'000'000;
  const char* env = std::getenv("EUMINIMA_NODE_BUDGET");
  if (env == nullptr || *env == '\0') return kDefault;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || v == 0) return kDefault;
  return v;
}

std::uint64_t ThetaProfile::total() const {
  std::uint64_t t = 0;
  for (const auto& [norm, count] : counts) t += count;
  return t;
}

CvpResult closest_vector(const Lattice& lattice, std::span<const Rational> target, std::uint64_t node_budget) {
  const std::size_t n = lattice.rank();
  if (target.size() != n) throw std::invalid_argument("closest_vector: target length differs from rank");
  std::uint64_t nodes = 0;
  CvpResult result;
  result.coords.assign(n, 0);
  result.dist2 = 0;
  for (const auto& block : orthogonal_blocks(lattice.gram())) {
    Engine engine(sub_matrix(lattice.gram(), block), node_budget, &nodes);
    std::vector<Rational> sub_target;
    for (std::size_t i : block) sub_target.push_back(target[i]);
    const CvpResult part = cvp_block(engine, sub_target);
    for (std::size_t k = 0; k < block.size(); ++k) result.coords[block[k]] = part.coords[k];
    result.dist2 += part.dist2;
  }
  return result;
}

ThetaProfile count_by_norm(const Lattice& lattice, const Rational& cutoff, std::uint64_t node_budget) {
  if (sgn(cutoff) <= 0) throw std::invalid_argument("count_by_norm: cutoff must be positive");
  std::uint64_t nodes = 0;
  Engine engine(lattice.gram(), node_budget, &nodes);
  const Real bound = to_real(cutoff);
  if (engine.predicted_log_nodes(bound) > std::log(static_cast<double>(node_budget))) {
    throw BudgetExceeded("count_by_norm: predicted enumeration size exceeds the node budget of " +
                         std::to_string(node_budget));
  }
  // Compare den * q(x) against den * cutoff exactly.
  const Rational scaled_cutoff = cutoff * Rational(engine.denominator());
  std::map<BigInt, std::uint64_t> raw;
  const std::vector<Real> zero(lattice.rank(), 0);
  engine.search(
      zero, [&] { return bound; },
      [&](const std::vector<long long>& x) {
        const BigInt s = engine.scaled_norm(x);
        if (cmp(Rational(s), scaled_cutoff) <= 0) ++raw[s];
      });
  ThetaProfile profile;
  profile.cutoff = cutoff;
  for (const auto& [s, count] : raw) profile.counts[make_rational(s, engine.denominator())] = count;
  return profile;
}

Rational deep_hole_distance(const Lattice& lattice, std::span<const Rational> x) {
  return closest_vector(lattice, x).dist2;
}

std::vector<CvpResult> points_within(const Lattice& lattice, std::span<const Rational> target, const Rational& radius2,
                                     std::uint64_t node_budget) {
  if (target.size() != lattice.rank()) throw std::invalid_argument("points_within: target length differs from rank");
  std::uint64_t nodes = 0;
  Engine engine(lattice.gram(), node_budget, &nodes);
  const ScaledTarget st = scale_target(target);
  const Real bound = to_real(radius2);
  std::vector<CvpResult> out;
  engine.search(
      st.tf, [&] { return bound; },
      [&](const std::vector<long long>& x) {
        Rational d = engine.distance(x, st.tt, st.tden);
        if (d <= radius2) out.push_back({x, std::move(d)});
      });
  std::sort(out.begin(), out.end(), [](const CvpResult& a, const CvpResult& b) {
    const int c = cmp(a.dist2, b.dist2);
    return c != 0 ? c < 0 : lex_less(a.coords, b.coords);
  });
  return out;
}

std::vector<Rational> halton_point(std::uint64_t index, std::size_t dim) {
  static constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
  if (dim > std::size(kPrimes)) throw std::invalid_argument("halton_point: dimension too large");
  std::vector<Rational> p(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const unsigned base = kPrimes[k];
    BigInt num = 0, den = 1;
    for (std::uint64_t i = index; i > 0; i /= base) {
      num = num * base + (i % base);
      den *= base;
    }
    // num holds the digits reversed; radical inverse = reversed digits / base^len.
    p[k] = make_rational(num, den);
  }
  return p;
}

Rational covering_lb(const Lattice& lattice, std::size_t samples, std::uint64_t seed, const CoveringOptions& options) {
  const std::size_t n = lattice.rank();
  if (n > options.rank_limit) throw std::invalid_argument("covering_lb: rank exceeds the configured limit");
  if (samples == 0) throw std::invalid_argument("covering_lb: need at least one sample");
  constexpr std::uint64_t kSeedStride = 1'000'003;
  Rational best = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto x = halton_point(1 + seed * kSeedStride + s, n);
    const Rational d = closest_vector(lattice, x).dist2;
    if (d > best) best = d;
    if (!options.refine) continue;
    if (const auto y = equidistant_point(lattice, x, d)) {
      const Rational dy = closest_vector(lattice, *y).dist2;
      if (dy > best) best = dy;
    }
  }
  return best;
}

Rational brute_cvp_oracle(const Lattice& lattice, std::span<const Rational> target, int box) {
  const std::size_t n = lattice.rank();
  if (n > 4) throw std::invalid_argument("brute_cvp_oracle: rank must be at most 4");
  if (box < 1) throw std::invalid_argument("brute_cvp_oracle: box must be positive");
  if (target.size() != n) throw std::invalid_argument("brute_cvp_oracle: target length differs from rank");
  std::vector<BigInt> center(n);
  for (std::size_t i = 0; i < n; ++i) {
    // round half up: floor(t + 1/2)
    Rational shifted = target[i] + make_rational(1, 2);
    mpz_fdiv_q(center[i].get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  }
  std::vector<int> off(n, -box);
  std::optional<Rational> best;
  bool best_on_boundary = false;
  std::vector<Rational> v(n);
  while (true) {
    bool boundary = false;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = Rational(center[i] + off[i]) - target[i];
      boundary = boundary || off[i] == box || off[i] == -box;
    }
    const Rational d = lattice.gram().quadratic_form(v);
    if (!best || d < *best) {
      best = d;
      best_on_boundary = boundary;
    } else if (d == *best) {
      best_on_boundary = best_on_boundary || boundary;
    }
    std::size_t k = 0;
    while (k < n && off[k] == box) off[k++] = -box;
    if (k == n) break;
    ++off[k];
  }
  if (best_on_boundary) throw std::runtime_error("brute_cvp_oracle: minimum lies on the box boundary; enlarge the box");
  return *best;
}

}  // namespace euminima
