#pragma once

// One computed space: its pair, exact invariants and (optionally) the
// Kreck-Stolz values with their rationalizations.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ekspace/invariants.hpp"
#include "ekspace/kreck_stolz.hpp"
#include "ekspace/params.hpp"
#include "ekspace/rational.hpp"

namespace ekspace {

struct KSValues {
  ModOneReal s1;
  ModOneReal s2;
  RationalInvariant s1_rat;
  RationalInvariant s2_rat;
  /// Binary exponent of |Im s2|; empty when the residual is exactly zero.
  std::optional<long> s2_imag_exp;
  int prec_bits = 0;
};

struct SpaceRecord {
  ParamPair pair;
  IntegerInvariants inv;
  std::optional<KSValues> ks;
};

struct KSOptions {
  PrecisionConfig precision;
  std::int64_t den_bound = kDefaultDenBound;
  int rational_bits = kDefaultRationalizeBits;
};

/// Pair plus integer invariants; throws kEvenModulus for an even r.
SpaceRecord make_record(const ParamPair& p);

/// Kreck-Stolz values of p, evaluated on orientation_preserving_key(p) so that
/// every pair of an orientation-preserving orbit gets bit-identical values.
KSValues compute_ks(const ParamPair& p, const KSOptions& opt, const CoprimalityTable& t);

struct RecordFailure {
  std::size_t index = 0;
  std::string message;
};

/// Fills in ks for every record, evaluating each distinct orbit key once.
/// Keys are processed in sorted order across `jobs` threads; results do not
/// depend on the job count. Records whose evaluation throws keep ks empty and
/// are listed in the return value.
std::vector<RecordFailure> attach_ks(std::vector<SpaceRecord>& records, const KSOptions& opt,
                                     const CoprimalityTable& t, int jobs = 1);

/// Order used for record files and class members:
/// (|r|, s_mod, p1_mod, sum, k0, k1, l0, l1).
bool record_less(const SpaceRecord& a, const SpaceRecord& b);

}  // namespace ekspace
