#pragma once

// Exact enumeration over lattices: closest vectors, vector counts by norm,
// deep-hole distances and sampled covering-radius lower bounds.
//
// Search trees are steered by long double arithmetic with a small outward
// slack, so no candidate that is within the bound in exact arithmetic is ever
// pruned; every reported distance and every accept/reject at a leaf is decided
// with exact rationals.

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "euminima/lattice.hpp"
#include "euminima/rational.hpp"

namespace euminima {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// EUMINIMA_NODE_BUDGET if set to a positive integer, else 10^8.
std::uint64_t default_node_budget();

struct ThetaProfile {
  Rational cutoff;
  std::map<Rational, std::uint64_t> counts;  // norm -> number of vectors

  std::uint64_t total() const;
  friend bool operator==(const ThetaProfile&, const ThetaProfile&) = default;
};

struct CvpResult {
  std::vector<long long> coords;
  Rational dist2;
};

// Closest lattice point to `target` (coordinates in the lattice basis).
// Among co-minimal points the lexicographically smallest coordinate vector
// is returned. Orthogonal blocks of the Gram matrix are solved independently.
CvpResult closest_vector(const Lattice& lattice, std::span<const Rational> target,
                         std::uint64_t node_budget = default_node_budget());

// Exact counts of lattice vectors v with q(v) <= cutoff, grouped by norm.
// Throws BudgetExceeded if the predicted or the actual number of search nodes
// exceeds node_budget.
ThetaProfile count_by_norm(const Lattice& lattice, const Rational& cutoff,
                           std::uint64_t node_budget = default_node_budget());

// Squared distance from x to the lattice; equals analytic_max iff x is a deep hole.
Rational deep_hole_distance(const Lattice& lattice, std::span<const Rational> x);

// All lattice points c with q(target - c) <= radius2, sorted by distance then
// coordinates.
std::vector<CvpResult> points_within(const Lattice& lattice, std::span<const Rational> target,
                                     const Rational& radius2, std::uint64_t node_budget = default_node_budget());

struct CoveringOptions {
  std::size_t rank_limit = 8;
  // Also evaluate, for each sample, the point equidistant from its rank+1
  // nearest affinely independent lattice points. Any point's distance is a
  // lower bound for max(L,q), so this only tightens the bound.
  bool refine = true;
};

// Lower bound on max(L,q): the largest exact squared distance to the lattice
// over `samples` Halton points in the fundamental parallelepiped (and their
// refinements). Deterministic in (samples, seed); non-decreasing in samples.
Rational covering_lb(const Lattice& lattice, std::size_t samples, std::uint64_t seed,
                     const CoveringOptions& options = {});

// The i-th point (i >= 1) of the Halton sequence in [0,1)^dim, exactly.
std::vector<Rational> halton_point(std::uint64_t index, std::size_t dim);

// Exhaustive search over integer points within `box` of the rounded target.
// Throws std::runtime_error if the minimum is attained on the box boundary
// and std::invalid_argument for rank > 4.
Rational brute_cvp_oracle(const Lattice& lattice, std::span<const Rational> target, int box);

}  // namespace euminima
