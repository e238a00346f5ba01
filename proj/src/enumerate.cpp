#include "ekspace/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>


namespace ekspace {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

bool line_ok(std::int64_t x, std::int64_t y, std::int64_t z, const CoprimalityTable& t) {
  return t.coprime(x, y) && t.coprime(x, z) && t.coprime(y, z);
}

// Admissibility, then condition C, on A = (k_i - l_j).
bool passes(const Triple& k, const Triple& l, const CoprimalityTable& t) {
  const std::int64_t a00 = k[0] - l[0], a01 = k[0] - l[1], a02 = k[0] - l[2];
  const std::int64_t a10 = k[1] - l[0], a11 = k[1] - l[1], a12 = k[1] - l[2];
  if (!t.gcd_is_one(a00, a11) || !t.gcd_is_one(a00, a12) || !t.gcd_is_one(a01, a10) ||
      !t.gcd_is_one(a01, a12) || !t.gcd_is_one(a02, a10) || !t.gcd_is_one(a02, a11)) {
    return false;
  }
  const std::int64_t a20 = k[2] - l[0], a21 = k[2] - l[1], a22 = k[2] - l[2];
  return line_ok(a00, a10, a20, t) || line_ok(a01, a11, a21, t) || line_ok(a02, a12, a22, t) ||
         line_ok(a00, a01, a02, t) || line_ok(a10, a11, a12, t) || line_ok(a20, a21, a22, t);
}

std::int64_t sigma2(const Triple& v) { return v[0] * v[1] + v[0] * v[2] + v[1] * v[2]; }

// Exact integer square root of d if d is a perfect square, else -1.
std::int64_t exact_sqrt(std::int64_t d) {
  if (d < 0) return -1;
  auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(d)));
  while (s * s > d) --s;
  while ((s + 1) * (s + 1) <= d) ++s;
  return s * s == d ? s : -1;
}

struct SliceRange {
  std::int64_t lo, hi;
};

// Values v in [-h, h] with sum - fixed - v also in [-h, h].
SliceRange third_range(std::int64_t h, std::int64_t sum, std::int64_t fixed) {
  return {std::max(-h, sum - fixed - h), std::min(h, sum - fixed + h)};
}

// All pairs of one (sum, k0) slice, in (k1, l0, l1) order.
std::vector<ParamPair> run_slice(const SearchBox& box, std::int64_t sum, std::int64_t k0,
                                 const CoprimalityTable& t, const std::vector<std::int64_t>& targets) {
  std::vector<ParamPair> out;
  const std::int64_t h = box.half_width;
  const SliceRange k1r = third_range(h, sum, k0);
  std::vector<std::int64_t> roots;
  for (std::int64_t k1 = k1r.lo; k1 <= k1r.hi; ++k1) {
    const Triple k{k0, k1, sum - k0 - k1};
    const std::int64_t s2k = sigma2(k);
    for (std::int64_t l0 = -h; l0 <= h; ++l0) {
      const SliceRange l1r = third_range(h, sum, l0);
      if (l1r.lo > l1r.hi) continue;
      auto consider = [&](std::int64_t l1) {
        const Triple l{l0, l1, sum - l0 - l1};
        if (!passes(k, l, t)) return;
        ParamPair p{k, l};
        if (box.canonical_only && canonical_form(p).pair != p) return;
        out.push_back(p);
      };
      if (targets.empty()) {
        for (std::int64_t l1 = l1r.lo; l1 <= l1r.hi; ++l1) consider(l1);
        continue;
      }
      // sigma2(l) = -l1^2 + (S - l0) l1 + l0 (S - l0); solve sigma2(l) = sigma2(k) - r.
      const std::int64_t b = sum - l0;
      roots.clear();
      for (std::int64_t r : targets) {
        const std::int64_t c = s2k - r - l0 * b;
        const std::int64_t root = exact_sqrt(b * b - 4 * c);
        if (root < 0 || ((b + root) & 1)) continue;
        for (std::int64_t l1 : {(b - root) / 2, (b + root) / 2}) {
          if (l1 >= l1r.lo && l1 <= l1r.hi) roots.push_back(l1);
        }
      }
      std::sort(roots.begin(), roots.end());
      roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
      for (std::int64_t l1 : roots) consider(l1);
    }
  }
  return out;
}

}  // namespace

void SearchBox::validate() const {
  if (half_width < 0) throw std::invalid_argument("half_width must be non-negative");
  if (sum_lo > sum_hi) throw std::invalid_argument("sum_lo must not exceed sum_hi");
}

void enumerate_box(const SearchBox& box, const CoprimalityTable& t, const PairSink& sink, int jobs) {
  box.validate();
  std::vector<std::int64_t> targets;
  if (box.r_filter) {
    for (std::int64_t v : *box.r_filter) {
      if (v <= 0) continue;
      targets.push_back(v);
      targets.push_back(-v);
    }
    if (targets.empty()) return;
  }
  struct Slice {
    std::int64_t sum, k0;
  };
  std::vector<Slice> slices;
  for (std::int64_t sum = box.sum_lo; sum <= box.sum_hi; ++sum) {
    for (std::int64_t k0 = -box.half_width; k0 <= box.half_width; ++k0) slices.push_back({sum, k0});
  }
  jobs = std::max(1, jobs);
  for (std::size_t start = 0; start < slices.size(); start += static_cast<std::size_t>(jobs)) {
    const std::size_t end = std::min(slices.size(), start + static_cast<std::size_t>(jobs));
    std::vector<std::vector<ParamPair>> results(end - start);
    if (jobs == 1) {
      results[0] = run_slice(box, slices[start].sum, slices[start].k0, t, targets);
    } else {
      std::vector<std::future<std::vector<ParamPair>>> futures;
      for (std::size_t i = start; i < end; ++i) {
        futures.push_back(std::async(std::launch::async, run_slice, std::cref(box), slices[i].sum,
                                     slices[i].k0, std::cref(t), std::cref(targets)));
      }
      for (std::size_t i = 0; i < futures.size(); ++i) results[i] = futures[i].get();
    }
    for (const auto& batch : results) {
      for (const auto& p : batch) sink(p);
    }
  }
}

std::vector<ParamPair> enumerate_all(const SearchBox& box, const CoprimalityTable& t, int jobs) {
  std::vector<ParamPair> out;
  enumerate_box(box, t, [&](const ParamPair& p) { out.push_back(p); }, jobs);
  return out;
}

namespace {

// Distinct orderings of a sorted triple.
std::int64_t orderings(const Triple& v) {
  if (v[0] == v[2]) return 1;
  if (v[0] == v[1] || v[1] == v[2]) return 3;
  return 6;
}

// Histogram contribution of all k with k0 = first entry, k and l sorted
// ascending; each hit stands for its orderings(k) * orderings(l) images under
// row and column permutations, which preserve the box, the sum and both filters.
void count_slice(std::int64_t h, std::int64_t sum, std::int64_t k0, const CoprimalityTable& t,
                 std::vector<std::int64_t>& hist) {
  // k0 <= k1 <= k2 = sum - k0 - k1
  const std::int64_t k1_hi = std::min(h, floor_div(sum - k0, 2));
  const std::int64_t k1_lo = std::max(k0, sum - k0 - h);
  for (std::int64_t k1 = k1_lo; k1 <= k1_hi; ++k1) {
    const Triple k{k0, k1, sum - k0 - k1};
    const std::int64_t wk = orderings(k);
    const std::int64_t mk = std::max(std::abs(k[0]), std::abs(k[2]));
    for (std::int64_t l0 = -h; l0 <= h; ++l0) {
      const std::int64_t l1_hi = std::min(h, floor_div(sum - l0, 2));
      const std::int64_t l1_lo = std::max(l0, sum - l0 - h);
      for (std::int64_t l1 = l1_lo; l1 <= l1_hi; ++l1) {
        const Triple l{l0, l1, sum - l0 - l1};
        if (!passes(k, l, t)) continue;
        const std::int64_t m = std::max({mk, std::abs(l[0]), std::abs(l[2])});
        hist[static_cast<std::size_t>(m)] += wk * orderings(l);
      }
    }
  }
}

}  // namespace

std::vector<std::int64_t> count_by_max_entry(std::int64_t half_width, const CoprimalityTable& t,
                                             std::int64_t sum_lo, std::int64_t sum_hi, int jobs) {
  SearchBox box;
  box.half_width = half_width;
  box.sum_lo = sum_lo;
  box.sum_hi = sum_hi;
  box.validate();
  const std::size_t width = static_cast<std::size_t>(half_width) + 1;
  std::vector<std::int64_t> total(width, 0);
  std::vector<std::pair<std::int64_t, std::int64_t>> slices;
  for (std::int64_t sum = sum_lo; sum <= sum_hi; ++sum) {
    for (std::int64_t k0 = -half_width; k0 <= half_width; ++k0) slices.emplace_back(sum, k0);
  }
  jobs = std::max(1, jobs);
  std::vector<std::future<std::vector<std::int64_t>>> futures;
  for (int w = 0; w < jobs; ++w) {
    auto work = [&, w] {
      std::vector<std::int64_t> hist(width, 0);
      for (std::size_t i = static_cast<std::size_t>(w); i < slices.size(); i += static_cast<std::size_t>(jobs)) {
        count_slice(half_width, slices[i].first, slices[i].second, t, hist);
      }
      return hist;
    };
    futures.push_back(std::async(jobs == 1 ? std::launch::deferred : std::launch::async, work));
  }
  for (auto& f : futures) {
    const auto hist = f.get();
    for (std::size_t m = 0; m < width; ++m) total[m] += hist[m];
  }
  return total;
}

std::vector<GrowthRow> growth_counts(const std::vector<std::int64_t>& half_widths,
                                     const CoprimalityTable& t, int jobs) {
  if (half_widths.empty()) return {};
  if (!std::is_sorted(half_widths.begin(), half_widths.end())) {
    throw std::invalid_argument("half widths must be ascending");
  }
  const auto hist = count_by_max_entry(half_widths.back(), t, 0, 2, jobs);
  std::vector<std::int64_t> cumulative(hist.size());
  std::int64_t running = 0;
  for (std::size_t m = 0; m < hist.size(); ++m) cumulative[m] = running += hist[m];
  std::vector<GrowthRow> out;
  for (std::int64_t k : half_widths) {
    const std::int64_t n = cumulative[static_cast<std::size_t>(k)];
    const std::int64_t prev = k > 0 ? cumulative[static_cast<std::size_t>(k - 1)] : 0;
    out.push_back({k, n, n - prev});
  }
  return out;
}

}  // namespace ekspace
