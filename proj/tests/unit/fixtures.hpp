#pragma once

#include <vector>

#include "ekspace/enumerate.hpp"
#include "ekspace/record.hpp"

namespace ekspace::testing {

/// Records with Kreck-Stolz values for every EK pair in [-h, h] with |r| in r.
inline std::vector<SpaceRecord> ks_records(std::int64_t h, std::set<std::int64_t> r, int jobs = 2) {
  static const CoprimalityTable t;
  SearchBox b;
  b.half_width = h;
  b.r_filter = std::move(r);
  std::vector<SpaceRecord> out;
  for (const auto& p : enumerate_all(b, t, jobs)) out.push_back(make_record(p));
  attach_ks(out, KSOptions{}, t, jobs);
  return out;
}

}  // namespace ekspace::testing
