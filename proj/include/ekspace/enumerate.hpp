#pragma once

// Streaming enumeration of Eschenburg-Kruggel pairs in a cube, and the
// growth counts N(k), dN(k).

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "ekspace/arith.hpp"
#include "ekspace/params.hpp"

namespace ekspace {

struct SearchBox {
  std::int64_t half_width = 0;
  std::int64_t sum_lo = 0;
  std::int64_t sum_hi = 2;
  /// Admitted values of |r|; unset admits everything.
  std::optional<std::set<std::int64_t>> r_filter;
  /// Emit only pairs equal to their own canonical_form.
  bool canonical_only = false;

  /// Throws std::invalid_argument for a negative half width or sum_lo > sum_hi.
  void validate() const;
};

using PairSink = std::function<void(const ParamPair&)>;

/// Calls sink on every admissible pair with a condition-C line in the box,
/// in ascending (sum, k0, k1, l0, l1) order. Work is split into k0 slices
/// over `jobs` threads; the sink always runs on the calling thread and sees
/// the same sequence for every job count.
void enumerate_box(const SearchBox& box, const CoprimalityTable& t, const PairSink& sink,
                   int jobs = 1);

std::vector<ParamPair> enumerate_all(const SearchBox& box, const CoprimalityTable& t, int jobs = 1);

/// Number of admissible condition-C pairs (same filters as enumerate_box,
/// r filter and canonical_only ignored) per value of max|entry|, for
/// max|entry| = 0 .. half_width.
std::vector<std::int64_t> count_by_max_entry(std::int64_t half_width, const CoprimalityTable& t,
                                             std::int64_t sum_lo = 0, std::int64_t sum_hi = 2,
                                             int jobs = 1);

struct GrowthRow {
  std::int64_t k = 0;
  std::int64_t n = 0;
  std::int64_t delta = 0;  // N(k) - N(k-1), with N(-1) = 0
};

/// N(k) for each requested half width (ascending), from a single pass over the
/// largest box.
std::vector<GrowthRow> growth_counts(const std::vector<std::int64_t>& half_widths,
                                     const CoprimalityTable& t, int jobs = 1);

}  // namespace ekspace
