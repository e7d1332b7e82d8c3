#pragma once

// Upper bounds on Euclidean minima as exact values, the exact decision
// procedures built on them, and a selector over the cyclotomic bounds.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "euminima/big_float.hpp"
#include "euminima/factored_int.hpp"
#include "euminima/fields.hpp"
#include "euminima/log_interval.hpp"
#include "euminima/power_product.hpp"

namespace euminima {

enum class BoundSource { Eq21, Cor35, PropP4a, PropP4b, Cor42, Cor43, Thm51, Thm52i, Thm52ii, Thm53, Minkowski };

std::string to_string(BoundSource s);

struct BoundEntry {
  BoundSource source = BoundSource::Eq21;
  std::optional<PowerProduct> value;  // absent for bounds with transcendental constants
  LogInterval log;                    // encloses ln(value)
  bool applicable = true;             // hypotheses of the underlying result hold
  std::string note;
};

struct Verdict {
  std::string name;
  bool holds = false;
  bool in_hypothesis = true;  // false: reported only, the claim does not cover this field
};

struct BoundReport {
  FieldDescriptor field;
  std::uint64_t n = 0;
  FactoredInt disc;
  std::optional<PowerProduct> tau_bound;
  std::vector<BoundEntry> bounds;
  std::optional<std::size_t> best;  // index into bounds
  std::vector<Verdict> verdicts;

  const BoundEntry* best_entry() const { return best ? &bounds[*best] : nullptr; }
  const Verdict* verdict(std::string_view name) const;
};

// (tau/n)^(n/2) * sqrt_disc.
PowerProduct eq21_bound(const PowerProduct& tau, std::uint64_t n, const PowerProduct& sqrt_disc);

// n p^(r - upsilon/n) (p^(r+1) + p^r + 1 - e^2) / (12 p^(r+1)).
PowerProduct cor35_tau_bound(const OddPPField& field);

// 2^-n sqrt(D).
PowerProduct minkowski_value(std::uint64_t n, const FactoredInt& disc);

// cor35_tau_bound <= n/4, decided exactly.
bool minkowski_holds(const OddPPField& field);

// sqrt(cor35_tau_bound / n).
PowerProduct omega_implied(const OddPPField& field);
// omega_implied <= 3^(-2/3), decided exactly.
bool omega_within_bound(const OddPPField& field);

BoundReport odd_bound(const OddPPField& field);
BoundReport two_power_bound(const TwoPowerField& field);

// epsilon(n) = (ln a_n + ln 2) / (n ln(2n) - ln 2), a_n = (1 - 1/(2n))^n.
BigFloat epsilon_n(std::uint64_t n, mpfr_prec_t precision = 128);

struct IdentityCheck {
  double lhs_log = 0;  // ln(2^-n sqrt(D)^(1 + eps))
  double rhs_log = 0;  // ln(2^-n (2n-1)^(n/2))
  double relative_error = 0;
  bool ok = false;
};
IdentityCheck cor42_identity_check(std::uint64_t n, double tolerance = 1e-9);

// sqrt(2 a_n) and its limit sqrt(2) e^(-1/4).
BigFloat cor43_envelope(std::uint64_t n, mpfr_prec_t precision = 128);
BigFloat cor43_limit(mpfr_prec_t precision = 128);

// m = 2 * odd describes the same field as the odd part; throws
// std::invalid_argument if the result is below 3.
std::uint64_t normalize_conductor(std::uint64_t m);

// Conductor shapes admitting the sharper product-conductor bounds: branch i
// for 2^a 3^b 5^c-type shapes, branch ii for the 12^(-n/2) family.
struct ConductorMatch {
  bool i = false;
  bool ii = false;
};
ConductorMatch product_hypotheses(std::uint64_t m);
// m = p^r or m = 4 * odd.
bool real_subfield_hypothesis(std::uint64_t m);

// Minimum over applicable entries with exact values, by exact comparison.
std::optional<std::size_t> select_best(const std::vector<BoundEntry>& entries);

// Only the general cyclotomic results: the Minkowski-type bound and the two
// product-conductor bounds for Q(zeta_m), the Minkowski bound for the maximal
// real subfield.
BoundReport best_known_bound(std::uint64_t m, bool maximal_real);

// best_known_bound plus the trace-form bound for odd prime-power m.
BoundReport cyclotomic_bounds(std::uint64_t m, bool maximal_real);

}  // namespace euminima
