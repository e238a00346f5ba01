#pragma once

// Parameter pairs (k, l), the difference matrix A = (k_i - l_j), the
// admissibility / freeness / condition-C predicates, and the order-144
// symmetry group generated by S3 x S3, the swap (k,l) -> (l,k) and the
// negation (k,l) -> (-k,-l).

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ekspace/arith.hpp"

namespace ekspace {

struct ParamPair {
  Triple k{};
  Triple l{};

  std::int64_t sum() const { return k[0] + k[1] + k[2]; }
  /// Largest absolute value among the six entries.
  std::int64_t max_abs() const;
  std::string to_string() const;

  friend auto operator<=>(const ParamPair&, const ParamPair&) = default;
};

std::ostream& operator<<(std::ostream& os, const ParamPair& p);

/// Validates the sum condition; throws Error(kSumMismatch).
ParamPair make_params(const Triple& k, const Triple& l);

/// Pair built from the five numbers (sum, k0, k1, l0, l1); k2, l2 derived.
ParamPair params_from_row(std::int64_t sum, std::int64_t k0, std::int64_t k1, std::int64_t l0,
                          std::int64_t l1);

/// Adds n*(1,1,1) to both triples so that the common sum lies in [lo, lo+2].
ParamPair shift_sum(const ParamPair& p, std::int64_t lo = 0);

struct DifferenceMatrix {
  std::array<std::array<std::int64_t, 3>, 3> a{};

  std::int64_t operator()(int i, int j) const { return a[i][j]; }
  Triple column(int j) const { return {a[0][j], a[1][j], a[2][j]}; }
  Triple row(int i) const { return a[i]; }

  friend bool operator==(const DifferenceMatrix&, const DifferenceMatrix&) = default;
};

DifferenceMatrix difference_matrix(const ParamPair& p);

/// gcd(A_0a, A_1b) = 1 for all a != b.
bool is_admissible(const ParamPair& p, const CoprimalityTable& t);

/// k - sigma(l) is primitive for all six permutations sigma.
bool is_free(const ParamPair& p);

enum class LineKind { kColumn, kRow };

struct ConditionCWitness {
  LineKind kind = LineKind::kColumn;
  int index = 0;
  friend bool operator==(const ConditionCWitness&, const ConditionCWitness&) = default;
};

std::string to_string(const ConditionCWitness& w);

/// Every line of A with three non-zero pairwise coprime entries, columns first
/// then rows, ascending index.
std::vector<ConditionCWitness> condition_c(const ParamPair& p, const CoprimalityTable& t);

/// Admissible with at least one condition-C witness.
bool is_eschenburg_kruggel(const ParamPair& p, const CoprimalityTable& t);

/// perm[i] is the source index of slot i: (perm . v)[i] = v[perm[i]].
using Permutation = std::array<int, 3>;

struct SymmetryElement {
  Permutation alpha{0, 1, 2};  // acts on k
  Permutation beta{0, 1, 2};   // acts on l
  bool swap = false;
  bool negate = false;

  int orientation() const { return negate ? -1 : 1; }

  /// All 144 elements; the identity is first and the 72 elements of the
  /// orientation-preserving subgroup precede the rest.
  static std::span<const SymmetryElement> all();
  /// The 72 elements with negate = false.
  static std::span<const SymmetryElement> orientation_preserving();
};

struct OrientedPair {
  ParamPair pair;
  int orientation = 1;
};

/// alpha on k, beta on l, then swap, then negate.
OrientedPair apply_symmetry(const ParamPair& p, const SymmetryElement& g);

/// Orbit representative with sum in [0,2], k and l ascending and k0 <= l0;
/// ties go to the lexicographically smallest (k, l). The orientation records
/// whether the representative is reached by an orientation-reversing move.
OrientedPair canonical_form(const ParamPair& p);

/// Lexicographically smallest image of p under the orientation-preserving
/// subgroup, with the sum shifted into [0,2]. Equal keys imply
/// orientation-preserving diffeomorphic spaces.
ParamPair orientation_preserving_key(const ParamPair& p);

/// Orientation-preserving equivalent pair whose leftmost column is the given
/// condition-C line.
ParamPair normalize_for_witness(const ParamPair& p, const ConditionCWitness& w);

/// Normalizes using the first witness of condition_c; throws kNoConditionC.
ParamPair normalize_for_kruggel(const ParamPair& p, const CoprimalityTable& t);

}  // namespace ekspace
