#pragma once

// Oriented homeomorphism classes keyed by (|r|, s, p1, s2), refined into
// diffeomorphism classes by s1; count tables, smallest representatives and
// orbit-pattern summaries.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ekspace/kreck_stolz.hpp"
#include "ekspace/rational.hpp"
#include "ekspace/record.hpp"

namespace ekspace {

struct HomeoKey {
  std::int64_t abs_r = 1;
  /// s and p1 mod |r| (symmetric residues), or the raw values in strict mode.
  WideInt s_key;
  WideInt p1_key;
  RationalInvariant s2;
  BigFloat s2_value;
};

struct DiffeoClass {
  RationalInvariant s1;
  BigFloat s1_value;
  /// Indices into the owning HomeoClass::members.
  std::vector<std::size_t> members;
};

struct HomeoClass {
  HomeoKey key;
  std::vector<SpaceRecord> members;
  std::vector<DiffeoClass> diffeo_classes;

  std::size_t smooth_count() const { return diffeo_classes.size(); }
};

enum class Match { kSame, kDifferent, kAmbiguous };

/// Exact comparison when both rationalizations are exact; otherwise the float
/// distance d on R/Z decides: d < tol/2 same, d > 2 tol different, else
/// ambiguous.
Match compare_mod_one(const RationalInvariant& ra, const BigFloat& a, const RationalInvariant& rb,
                      const BigFloat& b, const BigFloat& tol);

/// Recomputes a pair's Kreck-Stolz values at the given mantissa width.
using Recompute = std::function<KSValues(const ParamPair&, int bits)>;

struct ClassifyOptions {
  PrecisionConfig precision;
  /// Match raw s and p1 instead of their residues mod |r|.
  bool strict_s = false;
  /// Used once, at doubled precision, when a comparison is ambiguous.
  Recompute recompute;
};

/// Groups records (those without ks are ignored) into homeomorphism classes.
/// Output is ordered by (|r|, s_key, p1_key, s2) and members by record_less,
/// independent of input order. Throws kAmbiguousMatch when a comparison stays
/// ambiguous after escalation.
std::vector<HomeoClass> classify(std::vector<SpaceRecord> records, const ClassifyOptions& opt);

struct CountRow {
  std::int64_t abs_r = 0;
  std::int64_t top = 0;
  std::int64_t n28 = 0;
  std::int64_t n27 = 0;
  std::int64_t n14_26 = 0;
  std::int64_t n2_13 = 0;
  std::int64_t n1 = 0;
  friend bool operator==(const CountRow&, const CountRow&) = default;
};

std::vector<CountRow> count_table(const std::vector<HomeoClass>& classes);

struct RepRow {
  ParamPair pair;
  RationalInvariant s1;
  BigFloat s1_value;
};

struct RepBlock {
  std::int64_t abs_r = 0;
  WideInt s_key;
  WideInt p1_key;
  RationalInvariant s2;
  BigFloat s2_value;
  std::vector<RepRow> rows;
};

/// Smallest member of every diffeomorphism class for the given |r|, ordered
/// by max|entry|, then sum of |entries|, then (sum, k0, k1, l0, l1). Blocks
/// follow class order, rows ascend in s1.
std::vector<RepBlock> smallest_reps(const std::vector<HomeoClass>& classes, std::int64_t abs_r,
                                    bool nonnegative_s2_only = true);

/// Smaller-is-better ordering used by smallest_reps.
bool smaller_representative(const ParamPair& a, const ParamPair& b);

struct OrbitRow {
  std::int64_t abs_r = 0;
  WideInt s_key;
  WideInt p1_key;
  std::size_t class_count = 0;
  /// s2 values are base + j * step; step is empty with a single value.
  Fraction s2_base;
  std::optional<Fraction> s2_step;
  /// Distinct per-class minima of s1 in [-1/2, 1/2).
  std::vector<Fraction> s1_bases;
  std::vector<std::string> violations;
};

/// One row per (|r|, s_key, p1_key) family. Irregularities (inexact values,
/// uneven s2 spacing, s1 off the 1/28 lattice) are listed in violations.
std::vector<OrbitRow> orbit_summary(const std::vector<HomeoClass>& classes);

/// Throws kPatternViolation naming the first family with violations.
void require_orbit_pattern(const std::vector<OrbitRow>& rows);

}  // namespace ekspace
