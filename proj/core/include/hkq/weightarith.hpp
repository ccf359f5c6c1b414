#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hkq {

using Int = std::int64_t;

// Overflow-checked helpers; throw Error(Overflow).
Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);
Int checked_neg(Int a);

/// gcd with gcd(0, n) = |n|. The result is non-negative.
Int gcd(Int a, Int b);

struct WeightTriple {
  std::array<Int, 3> p{};
  Int operator[](int i) const { return p[i]; }
  friend bool operator==(const WeightTriple&, const WeightTriple&) = default;
  friend auto operator<=>(const WeightTriple&, const WeightTriple&) = default;
};

struct WeightQuad {
  std::array<Int, 4> p{};
  Int operator[](int i) const { return p[i]; }
  friend bool operator==(const WeightQuad&, const WeightQuad&) = default;
  friend auto operator<=>(const WeightQuad&, const WeightQuad&) = default;
};

/// 2x3 integer weight matrix with rows p and q.
struct WeightMatrix {
  std::array<Int, 3> p{};
  std::array<Int, 3> q{};
  friend bool operator==(const WeightMatrix&, const WeightMatrix&) = default;
};

struct MinorTriple {
  Int d12 = 0, d13 = 0, d23 = 0;
  friend bool operator==(const MinorTriple&, const MinorTriple&) = default;
};

/// Box determinants det[[p1 -+ p2, q1 -+ q2], [p1 -+ p3, q1 -+ q3]] in the
/// fixed order (--, +-, -+, ++). In a label the first character is the sign of
/// the (p1 -+ p3) row and the second the sign of the (p1 -+ p2) row, so "+-"
/// is rows (p1 - p2, p1 + p3).
struct BoxQuad {
  std::array<Int, 4> v{};
  static constexpr std::array<const char*, 4> kLabels = {"--", "+-", "-+", "++"};
  Int operator[](int i) const { return v[i]; }
  friend bool operator==(const BoxQuad&, const BoxQuad&) = default;
};

/// Exact predicate result with a human-readable reason for the first failed
/// condition (empty when the predicate holds).
struct Verdict {
  bool value = false;
  std::string reason;
  explicit operator bool() const { return value; }
};

// ---------------------------------------------------------------------------
// Triples and quadruples
// ---------------------------------------------------------------------------

/// The ordering-independent part of admissibility: pairwise coprime and the
/// four gcd(p1 +- p2, p1 +- p3) equal to 1.
Verdict satisfies_gcd_conditions(const WeightTriple& p);

/// 0 < p1 < p2 < p3 plus `satisfies_gcd_conditions`.
Verdict admissibility(const WeightTriple& p);
bool is_admissible_triple(const WeightTriple& p);

/// Absolute values sorted ascending; the sign-flip / relabeling normal form.
WeightTriple normalize_weights(const WeightTriple& p);

/// 0 <= p1 < p2 < p3 < p4 and, for each sub-triple (pi, pj, pk) with i<j<k,
/// gcd(pi, pj, pk) = 1 and gcd(pi +- pj, pi +- pk) = 1.
Verdict quad_freeness(const WeightQuad& p);
bool is_free_quadruple(const WeightQuad& p);

// ---------------------------------------------------------------------------
// Weight matrices
// ---------------------------------------------------------------------------

MinorTriple minor_determinants(const WeightMatrix& theta);
BoxQuad box_determinants(const WeightMatrix& theta);
/// The four boxes as linear combinations of the minors.
BoxQuad boxes_from_minors(const MinorTriple& m);
bool verify_box_identity(const WeightMatrix& theta);

/// Three-condition test on the minors; `reason` names the first failure.
Verdict theta_locally_free(const WeightMatrix& theta);

/// GL(2,Z) row action U * theta.
WeightMatrix apply_row_transform(const std::array<std::array<Int, 2>, 2>& u,
                                 const WeightMatrix& theta);

struct ObstructionRow {
  std::array<Int, 3> minors{};  // (d12, d23, d13), each +-1
  BoxQuad boxes;
  int count_pm3 = 0;
  int count_pm1 = 0;
};

struct ObstructionReport {
  std::vector<ObstructionRow> rows;  // 8 rows, sign assignments in binary order
  bool every_row_has_pm3 = false;
  bool some_row_all_pm1 = false;
  int min_count_pm3 = 0;
  int max_count_pm3 = 0;
  /// Whether every assignment has two or more boxes equal to +-3.
  bool two_or_more_pm3_everywhere = false;
  bool holds() const { return every_row_has_pm3 && !some_row_all_pm1; }
};

ObstructionReport theta_smoothness_obstruction();

// ---------------------------------------------------------------------------
// Isotropy counts
// ---------------------------------------------------------------------------

/// Order of a finite isotropy group, or infinite.
struct IsotropyOrder {
  bool infinite = false;
  std::uint64_t order = 1;
  static IsotropyOrder finite(std::uint64_t n) { return {false, n}; }
  static IsotropyOrder unbounded() { return {true, 0}; }
  std::string str() const;
  friend bool operator==(const IsotropyOrder&, const IsotropyOrder&) = default;
};

/// Number of tau on the circle with tau^a = 1 for every a in the list.
IsotropyOrder circle_isotropy_order(const std::vector<Int>& exponents);

using IntMatrix2 = std::array<std::array<Int, 2>, 2>;

/// Diagonal (d1, d2) with d1 | d2 of the Smith normal form of a 2x2 matrix.
std::array<Int, 2> smith_diagonal(const IntMatrix2& e);

/// Number of (tau, rho) on the 2-torus with tau^E11 rho^E12 = 1 and
/// tau^E21 rho^E22 = 1.
IsotropyOrder torus_isotropy_order(const IntMatrix2& e);

/// Exponent matrices [[p1 -+ p2, -q1 +- q2], [p1 -+ p3, -q1 +- q3]] of the
/// four fixed-point systems on the u1 = 0 stratum, in box order.
std::array<IntMatrix2, 4> singular_fixed_point_systems(const WeightMatrix& theta);

/// |box| for the four systems. Throws NotLocallyFree.
std::array<std::uint64_t, 4> singular_group_orders(const WeightMatrix& theta);

// ---------------------------------------------------------------------------
// Enumerations (lexicographic, deterministic)
// ---------------------------------------------------------------------------

std::vector<WeightTriple> enumerate_admissible_triples(Int bound);
std::vector<WeightQuad> enumerate_free_quadruples(Int bound);

struct ParityReport {
  Int bound = 0;
  std::uint64_t quadruples_checked = 0;
  std::optional<WeightQuad> counterexample;  // all four triples admissible
  std::uint64_t admissible_triples = 0;
  bool every_admissible_triple_has_one_even = false;
  bool holds() const { return !counterexample && every_admissible_triple_has_one_even; }
};

ParityReport verify_parity_obstruction(Int bound);

}  // namespace hkq
