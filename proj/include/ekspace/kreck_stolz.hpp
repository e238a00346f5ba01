#pragma once

// Arbitrary-precision Kreck-Stolz invariants s1, s2 of Eschenburg-Kruggel
// spaces, assembled from the invariants of three lens spaces bounding a
// cobordism together with E_{k,l}.

#include <array>
#include <cstdint>

#include "ekspace/arith.hpp"
#include "ekspace/bigfloat.hpp"
#include "ekspace/params.hpp"

namespace ekspace {

/// How a real number is projected onto a representative of R/Z in [-1/2, 1/2).
enum class ModOneConvention {
  /// x - floor(x + 1/2): the representative closest to x.
  kSymmetric,
  /// frac(x) - 1/2. The representative fixtures use this projection; values
  /// differ from kSymmetric by exactly 1/2 mod 1.
  kShiftedHalf,
};

struct PrecisionConfig {
  int mantissa_bits = 130;
  int compare_bits = 100;
  int guard_bits = 64;
  /// Recompute at mantissa_bits + guard_bits and require agreement to
  /// 2^-compare_bits.
  bool self_check = true;
  /// Projection used for the space invariants s1(E), s2(E). Lens-space values
  /// are always reported with kSymmetric.
  ModOneConvention convention = ModOneConvention::kShiftedHalf;

  /// 2^-compare_bits at mantissa_bits precision.
  BigFloat tolerance() const;
  /// Throws std::invalid_argument unless 0 < compare_bits < mantissa_bits.
  void validate() const;
  PrecisionConfig with_bits(int bits) const {
    PrecisionConfig c = *this;
    c.mantissa_bits = bits;
    return c;
  }
};

/// A real number reduced modulo 1 into [-1/2, 1/2).
class ModOneReal {
 public:
  ModOneReal() = default;

  static ModOneReal reduce(const BigFloat& x, ModOneConvention convention);
  /// Wraps a value already in [-1/2, 1/2); anything else is reduced
  /// symmetrically.
  static ModOneReal from_reduced(const BigFloat& x);

  const BigFloat& value() const { return value_; }
  int precision() const { return value_.precision(); }
  double to_double() const { return value_.to_double(); }

  friend bool operator==(const ModOneReal&, const ModOneReal&) = default;

 private:
  explicit ModOneReal(BigFloat v) : value_(std::move(v)) {}
  BigFloat value_;
};

/// Distance between a and b on R/Z, in [0, 1/2].
BigFloat mod_one_distance(const BigFloat& a, const BigFloat& b);
inline BigFloat mod_one_distance(const ModOneReal& a, const ModOneReal& b) {
  return mod_one_distance(a.value(), b.value());
}

struct LensSpace {
  std::int64_t p = 1;
  std::array<std::int64_t, 4> weights{1, 1, 1, 1};
  friend bool operator==(const LensSpace&, const LensSpace&) = default;
};

/// Throws kInvalidLens when p = 0, a weight is 0, or a weight shares a
/// factor with p.
LensSpace make_lens(std::int64_t p, const std::array<std::int64_t, 4>& weights);

/// The raw trigonometric sums over k = 1 .. |p|-1:
///   cot:  sum prod_j cot(k pi p_j / p)
///   csc:  sum prod_j csc(k pi p_j / p)
///   exp:  sum (e^{2 pi i k / p} - 1) prod_j csc(k pi p_j / p)   (re, im)
struct LensSums {
  BigFloat cot;
  BigFloat csc;
  BigFloat exp_re;
  BigFloat exp_im;
};

LensSums lens_sums(const LensSpace& lens, int precision_bits);

/// cot/(2^5 7 p) + csc/(2^4 p) mod 1.
ModOneReal lens_s1(const LensSpace& lens, const PrecisionConfig& cfg);

struct LensS2 {
  ModOneReal value;
  BigFloat imag_residual;
};

/// exp/(2^4 p) mod 1, with |Im| kept as a diagnostic.
LensS2 lens_s2(const LensSpace& lens, const PrecisionConfig& cfg);

/// q = A00^2 + A10^2 + A20^2 + A01^2 + A11^2 + A21^2 - (l0 - l1)^2 for a
/// pair whose leftmost column satisfies condition C.
WideInt ks_q(const ParamPair& normalized);

/// w = r A00 A10 A20; throws kZeroW when it vanishes.
WideInt ks_w(const ParamPair& normalized);

/// The three lens spaces built from the first two columns of A.
std::array<LensSpace, 3> kruggel_lenses(const ParamPair& normalized);

struct LensTerm {
  LensSpace lens;
  ModOneReal s1;
  ModOneReal s2;
  BigFloat s2_imag;
};

struct KSResult {
  ModOneReal s1;
  ModOneReal s2;
  BigFloat s2_imag_residual;
  WideInt q;
  WideInt w;
  std::array<LensTerm, 3> lens_terms;
  ParamPair normalized_pair;
  int precision_bits = 0;
};

/// Normalizes p (first condition-C witness to the leftmost column) and
/// evaluates s1, s2. Errors: kNoConditionC, kInvalidLens, kZeroW,
/// kImaginaryResidual, kPrecisionLoss.
KSResult ks_invariants(const ParamPair& p, const PrecisionConfig& cfg, const CoprimalityTable& t);

/// Same, for a pair already carrying a qualifying leftmost column.
KSResult ks_invariants_normalized(const ParamPair& normalized, const PrecisionConfig& cfg);

}  // namespace ekspace
