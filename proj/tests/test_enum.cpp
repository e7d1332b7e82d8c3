#include <cstdlib>
#include <random>
#include <vector>

#include "doctest.h"
#include "euminima/enumeration.hpp"
#include "test_support.hpp"

using namespace euminima;
using testing::q;

namespace {

Rational dist2(const Lattice& l, std::span<const Rational> t, const std::vector<long long>& c) {
  std::vector<Rational> d(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) d[i] = t[i] - Rational(static_cast<long>(c[i]));
  return l.gram().quadratic_form(d);
}

// Exhaustive minimum over a box around the rounded target, independent of the library search.
Rational local_brute(const Lattice& l, std::span<const Rational> t, int box) {
  const std::size_t n = t.size();
  std::vector<long long> centre(n), c(n);
  for (std::size_t i = 0; i < n; ++i) centre[i] = std::lround(t[i].get_d());
  std::optional<Rational> best;
  std::vector<int> off(n, -box);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) c[i] = centre[i] + off[i];
    const Rational d = dist2(l, t, c);
    if (!best || d < *best) best = d;
    std::size_t k = 0;
    while (k < n && off[k] == box) off[k++] = -box;
    if (k == n) break;
    ++off[k];
  }
  return *best;
}

// Counts by norm over a box, for small lattices with a known enclosing box.
std::map<Rational, std::uint64_t> local_theta(const Lattice& l, const Rational& cutoff, int box) {
  const std::size_t n = l.rank();
  std::map<Rational, std::uint64_t> out;
  std::vector<int> off(n, -box);
  std::vector<Rational> v(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) v[i] = off[i];
    const Rational norm = l.gram().quadratic_form(v);
    if (norm <= cutoff) ++out[norm];
    std::size_t k = 0;
    while (k < n && off[k] == box) off[k++] = -box;
    if (k == n) break;
    ++off[k];
  }
  return out;
}

}  // namespace

TEST_CASE("closest_vector examples") {
  const Lattice a2 = make_A_dual_scaled(2);
  const std::vector<Rational> t{q(1, 3), q(2, 3)};
  const CvpResult r = closest_vector(a2, t);
  CHECK(r.dist2 == q(2, 3));
  CHECK(r.coords == std::vector<long long>{0, 0});  // lexicographically first of three

  const std::vector<Rational> diag{q(1), q(4)};
  const std::vector<Rational> u{q(5, 2), q(-7, 5)};
  const CvpResult s = closest_vector(make_diag(diag), u);
  CHECK(s.coords == std::vector<long long>{2, -1});
  CHECK(s.dist2 == q(1, 4) + 4 * q(4, 25));

  const std::vector<Rational> wrong{q(1)};
  CHECK_THROWS_AS(closest_vector(a2, wrong), std::invalid_argument);
}

TEST_CASE("closest_vector matches exhaustive search") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 120; ++t) {
    const std::size_t rank = 1 + t % 4;
    const Lattice l = testing::random_lattice(rng, rank, 2, 3);
    const auto target = testing::random_target(rng, rank);
    const CvpResult r = closest_vector(l, target);
    CHECK(r.dist2 == dist2(l, target, r.coords));
    CHECK(r.dist2 == local_brute(l, target, 6));
    CHECK(r.dist2 == brute_cvp_oracle(l, target, 6));
    // Translating the target by a lattice vector does not change the distance.
    std::vector<Rational> shifted = target;
    for (std::size_t i = 0; i < rank; ++i) shifted[i] += static_cast<long>(i) - 1;
    CHECK(closest_vector(l, shifted).dist2 == r.dist2);
  }
}

TEST_CASE("count_by_norm examples") {
  const ThetaProfile a2 = count_by_norm(make_A_dual_scaled(2), q(2));
  CHECK(a2.counts == std::map<Rational, std::uint64_t>{{q(0), 1}, {q(2), 6}});
  CHECK(a2.total() == 7);
  const std::vector<Rational> d{q(4), q(8), q(8), q(8)};
  const ThetaProfile p = count_by_norm(make_diag(d), q(4));
  CHECK(p.counts == std::map<Rational, std::uint64_t>{{q(0), 1}, {q(4), 2}});
  CHECK_THROWS_AS(count_by_norm(make_diag(d), q(0)), std::invalid_argument);
}

TEST_CASE("count_by_norm matches box enumeration") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 40; ++t) {
    const std::size_t rank = 1 + t % 3;
    // Integer Grams with the identity added keep every vector of norm <= 6 inside a box of 6.
    const Lattice base = testing::random_lattice(rng, rank, 2, 1);
    SymMatrix g = base.gram();
    for (std::size_t i = 0; i < rank; ++i) g.set(i, i, g(i, i) + 1);
    const Lattice l(g);
    const Rational cutoff = q(6);
    CHECK(count_by_norm(l, cutoff).counts == local_theta(l, cutoff, 6));
  }
}

TEST_CASE("theta profile of an orthogonal sum is the convolution") {
  const Lattice a = make_A_dual_scaled(2);
  const Lattice b = make_L(q(4), 2);
  const std::vector<Lattice> parts{a, b};
  const Rational cutoff = q(8);
  const auto pa = count_by_norm(a, cutoff).counts;
  const auto pb = count_by_norm(b, cutoff).counts;
  std::map<Rational, std::uint64_t> conv;
  for (const auto& [na, ca] : pa) {
    for (const auto& [nb, cb] : pb) {
      if (na + nb <= cutoff) conv[na + nb] += ca * cb;
    }
  }
  CHECK(count_by_norm(orth_sum(parts), cutoff).counts == conv);
}

TEST_CASE("theta profile is invariant under unimodular change of basis") {
  const Lattice l = make_L(q(5), 3);
  const Lattice m(l.gram().congruence({{1, 2, 0}, {0, 1, -1}, {0, 0, 1}}));
  CHECK(count_by_norm(l, q(12)).counts == count_by_norm(m, q(12)).counts);
}

TEST_CASE("deep_hole_distance") {
  const Lattice a = scale(make_A_dual_scaled(2), q(3));
  const std::vector<Rational> x{q(1, 3), q(2, 3)};
  CHECK(deep_hole_distance(a, x) == 2);
  CHECK(deep_hole_distance(a, x) == *a.analytic_max());
  const std::vector<Rational> d{q(1), q(2), q(3)};
  const std::vector<Rational> half{q(1, 2), q(1, 2), q(1, 2)};
  CHECK(deep_hole_distance(make_diag(d), half) == *make_diag(d).analytic_max());
}

TEST_CASE("covering_lb") {
  const Lattice a = make_A_dual_scaled(2);
  const Rational lb = covering_lb(a, 50, 0);
  CHECK(lb <= *a.analytic_max());
  CHECK(lb == *a.analytic_max());  // refinement finds the deep hole
  const std::vector<Rational> d{q(1), q(3), q(5)};
  CHECK(covering_lb(make_diag(d), 20, 1) == q(9, 4));
  CoveringOptions plain;
  plain.refine = false;
  Rational prev = 0;
  for (std::size_t s : {1, 5, 20, 80}) {
    const Rational cur = covering_lb(make_L(q(5), 3), s, 3, plain);
    CHECK(cur >= prev);
    prev = cur;
  }
  CHECK(covering_lb(make_L(q(5), 3), 40, 7) == covering_lb(make_L(q(5), 3), 40, 7));
  CHECK_THROWS_AS(covering_lb(a, 0, 0), std::invalid_argument);
  const std::vector<Rational> big(9, q(1));
  CHECK_THROWS_AS(covering_lb(make_diag(big), 1, 0), std::invalid_argument);
}

TEST_CASE("brute_cvp_oracle guards") {
  const Lattice a = make_A_dual_scaled(2);
  const std::vector<Rational> far{q(1, 2), q(1, 2)};
  CHECK_NOTHROW(brute_cvp_oracle(a, far, 2));
  // A very skewed form puts the minimum outside a unit box.
  const Lattice skew(SymMatrix{{1, q(99, 100)}, {q(99, 100), 1}});
  const std::vector<Rational> t{q(5, 2), q(-5, 2)};
  CHECK_THROWS_AS(brute_cvp_oracle(skew, t, 1), std::runtime_error);
  const std::vector<Rational> five(5, q(1));
  const std::vector<Rational> t5(5, q(1, 3));
  CHECK_THROWS_AS(brute_cvp_oracle(make_diag(five), t5, 2), std::invalid_argument);
}

TEST_CASE("node budget") {
  const std::vector<Rational> ones(8, q(1));
  CHECK_THROWS_AS(count_by_norm(make_diag(ones), q(40), 1000), BudgetExceeded);
  CHECK_NOTHROW(count_by_norm(make_diag(ones), q(1), 1000));
  CHECK(default_node_budget() > 0);
}

TEST_CASE("halton_point and points_within") {
  CHECK(halton_point(1, 2) == std::vector<Rational>{q(1, 2), q(1, 3)});
  CHECK(halton_point(2, 3) == std::vector<Rational>{q(1, 4), q(2, 3), q(2, 5)});
  const Lattice a = make_A_dual_scaled(2);
  const std::vector<Rational> t{q(1, 3), q(2, 3)};
  const auto pts = points_within(a, t, q(2, 3));
  REQUIRE(pts.size() == 3);
  for (const auto& p : pts) CHECK(p.dist2 == q(2, 3));
  CHECK(pts.front().coords == std::vector<long long>{0, 0});
  CHECK(points_within(a, t, q(1, 2)).empty());
}
