#pragma once

// Abelian number fields of prime-power conductor and their trace-form lattices.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "euminima/factored_int.hpp"
#include "euminima/lattice.hpp"
#include "euminima/sym_matrix.hpp"

namespace euminima {

// The subfield of index e of Q(zeta_{p^r}), p an odd prime, e | p - 1.
struct OddPPField {
  std::uint64_t p = 3;
  unsigned r = 1;
  std::uint64_t e = 1;

  // Throws std::invalid_argument unless p is an odd prime, r >= 1, e | p-1,
  // p^r fits in 62 bits and n >= 2 (n = 1 is the field Q, admitted only with
  // allow_trivial).
  static OddPPField make(std::uint64_t p, unsigned r, std::uint64_t e, bool allow_trivial = false);

  std::uint64_t conductor() const;
  std::uint64_t p_pow_r_minus_1() const;
  std::uint64_t degree() const;                     // n = (p-1) p^(r-1) / e
  std::uint64_t d() const { return (p - 1) / e; }  // (p-1)/e
  // Number of copies of the A-type block: (p^(r-1) - 1)/e.
  std::uint64_t gamma_copies() const;
  // upsilon = r n - (p^(r-1) - 1)/e - 1, so that D_K = p^upsilon.
  BigInt upsilon() const;
  // Complex conjugation lies in the order-e subgroup iff e is even.
  bool totally_real() const { return e % 2 == 0; }

  friend bool operator==(const OddPPField&, const OddPPField&) = default;
};

enum class TwoPowerVariant { Cyclo, Real, Imag };

std::string to_string(TwoPowerVariant v);
TwoPowerVariant parse_two_power_variant(const std::string& s);

// Q(zeta), Q(zeta + zeta^-1) or Q(zeta - zeta^-1) for zeta of order 2^r, r >= 3.
struct TwoPowerField {
  unsigned r = 3;
  TwoPowerVariant variant = TwoPowerVariant::Cyclo;

  static TwoPowerField make(unsigned r, TwoPowerVariant variant);
  std::uint64_t degree() const;

  friend bool operator==(const TwoPowerField&, const TwoPowerField&) = default;
};

// Q(zeta_m) or its maximal real subfield; m >= 3, m != 2 (mod 4).
struct CycloField {
  std::uint64_t m = 3;
  bool maximal_real = false;

  static CycloField make(std::uint64_t m, bool maximal_real);
  std::uint64_t degree() const;

  friend bool operator==(const CycloField&, const CycloField&) = default;
};

using FieldDescriptor = std::variant<OddPPField, TwoPowerField, CycloField>;

std::uint64_t degree(const FieldDescriptor& field);
std::string describe(const FieldDescriptor& field);

std::uint64_t euler_phi(std::uint64_t m);
int mobius(std::uint64_t m);

// Tr_{Q(zeta_m)/Q}(zeta_m^k) = mu(d) phi(m) / phi(d), d = m / gcd(k, m).
std::int64_t trace_zeta(std::uint64_t m, std::int64_t k);

// Smallest primitive root of p that is also primitive mod p^2, hence a
// generator of (Z/p^r)^x for every r.
std::uint64_t unit_group_generator(std::uint64_t p);

class DetMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Conjugation {
  Hermitian,  // q(x, y) = Tr(x * conj(y))
  Bilinear,   // q(x, y) = Tr(x * y)
};

// A Z-basis of a subring of Z[zeta_M] given by sparse exponent lists, and the
// divisor turning Tr_{Q(zeta_M)/Q} into the trace of the subfield.
struct TraceBasis {
  std::uint64_t modulus = 1;
  std::uint64_t divisor = 1;
  std::vector<std::vector<std::pair<std::uint64_t, long long>>> elements;
};

SymMatrix trace_gram(const TraceBasis& basis, Conjugation conjugation = Conjugation::Hermitian);

// Integral basis of O_K used by period_gram. For r = 1 these are the Gaussian
// periods eta_i = sum_{h in H} zeta^(g^i h). For r >= 2 those periods are
// linearly dependent, so the basis is drawn from the relative traces
// Tr_{Q(zeta)/K}(zeta^a), which span O_K because Q(zeta)/K is tamely ramified.
TraceBasis period_basis(const OddPPField& field);

SymMatrix period_trace_matrix(const OddPPField& field, Conjugation conjugation = Conjugation::Hermitian);

// Trace-form lattice on the period basis; throws DetMismatch unless its
// determinant is p^upsilon.
Lattice period_gram(const OddPPField& field);

// Orthogonal sum of (p^(r-1) - 1)/e copies of p^(r-1) L_{p,p-1} and one
// e p^(r-1) L_{p/e, d}. analytic_max is present iff e = 1.
Lattice canonical_gram(const OddPPField& field);

TraceBasis two_power_basis(const TwoPowerField& field);
SymMatrix two_power_trace_matrix(const TwoPowerField& field, Conjugation conjugation = Conjugation::Hermitian);
// For Imag the result is checked against diag(n, 2n, ..., 2n).
Lattice two_power_gram(const TwoPowerField& field);

// Power basis of Z[zeta_m], or 1, theta_1, ..., theta_{n-1} with
// theta_k = zeta^k + zeta^-k for the maximal real subfield.
TraceBasis cyclo_basis(const CycloField& field);
SymMatrix cyclo_trace_matrix(const CycloField& field, Conjugation conjugation = Conjugation::Hermitian);

// Absolute discriminant.
FactoredInt disc(const FieldDescriptor& field);

// Closed forms, used where the Gram route is too large and as cross-checks.
FactoredInt cyclotomic_disc_formula(std::uint64_t m);
FactoredInt maximal_real_disc_formula(std::uint64_t m);

}  // namespace euminima
