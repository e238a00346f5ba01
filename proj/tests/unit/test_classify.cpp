#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "ekspace/classify.hpp"
#include "ekspace/error.hpp"
#include "fixtures.hpp"

using namespace ekspace;

namespace {

RationalInvariant exact(std::int64_t n, std::int64_t d) {
  RationalInvariant r;
  r.numerator = n;
  r.denominator = d;
  r.exact = true;
  return r;
}

BigFloat value(double x) {
  BigFloat b(130);
  mpfr_set_d(b.get(), x, MPFR_RNDN);
  return b;
}

const std::vector<SpaceRecord>& r1_records() {
  static const auto recs = testing::ks_records(16, {1});
  return recs;
}

}  // namespace

TEST_CASE("compare_mod_one") {
  const BigFloat tol = value(1e-20);
  CHECK(compare_mod_one(exact(1, 28), value(1.0 / 28), exact(1, 28), value(0.2), tol) == Match::kSame);
  CHECK(compare_mod_one(exact(1, 28), value(1.0 / 28), exact(1, 14), value(1.0 / 28), tol) == Match::kDifferent);
  const RationalInvariant loose;
  CHECK(compare_mod_one(loose, value(0.25), loose, value(0.25), tol) == Match::kSame);
  CHECK(compare_mod_one(loose, value(0.25), loose, value(0.26), tol) == Match::kDifferent);
  BigFloat nudged = value(0.25);
  mpfr_add(nudged.get(), nudged.get(), tol.get(), MPFR_RNDN);
  CHECK(compare_mod_one(loose, value(0.25), loose, nudged, tol) == Match::kAmbiguous);
  CHECK(compare_mod_one(loose, value(-0.5), loose, value(0.5), tol) == Match::kSame);
}

TEST_CASE("classes of |r| = 1 spaces") {
  const auto& recs = r1_records();
  REQUIRE(recs.size() > 100);
  const auto classes = classify(recs, ClassifyOptions{});
  REQUIRE_FALSE(classes.empty());
  std::size_t members = 0;
  for (const auto& c : classes) {
    members += c.members.size();
    CHECK(c.key.abs_r == 1);
    CHECK(c.key.s2.exact);
    // s2 on the lattice -1/2 + j/12.
    CHECK(12 % c.key.s2.denominator == 0);
    CHECK(std::is_sorted(c.members.begin(), c.members.end(), record_less));
    CHECK(c.smooth_count() <= 28);
    std::size_t in_classes = 0;
    for (const auto& d : c.diffeo_classes) {
      in_classes += d.members.size();
      CHECK(d.s1.exact);
      const Fraction diff = d.s1.fraction() - c.diffeo_classes.front().s1.fraction();
      CHECK(28 % diff.den == 0);
    }
    CHECK(in_classes == c.members.size());
  }
  CHECK(members == recs.size());
  CHECK_NOTHROW(require_orbit_pattern(orbit_summary(classes)));

  auto shuffled = recs;
  std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937_64(61));
  const auto again = classify(shuffled, ClassifyOptions{});
  REQUIRE(again.size() == classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    CHECK(again[i].key.s2.to_string() == classes[i].key.s2.to_string());
    CHECK(again[i].smooth_count() == classes[i].smooth_count());
    CHECK(again[i].members.front().pair == classes[i].members.front().pair);
  }

  const auto counts = count_table(classes);
  REQUIRE(counts.size() == 1);
  CHECK(counts[0].top == static_cast<std::int64_t>(classes.size()));
  CHECK(counts[0].n28 + counts[0].n27 + counts[0].n14_26 + counts[0].n2_13 + counts[0].n1 == counts[0].top);
}

TEST_CASE("smallest representatives") {
  const auto classes = classify(r1_records(), ClassifyOptions{});
  const auto blocks = smallest_reps(classes, 1);
  bool seen_a = false, seen_b = false;
  for (const auto& b : blocks) {
    CHECK(b.s2.numerator >= 0);
    CHECK(std::is_sorted(b.rows.begin(), b.rows.end(),
                         [](const RepRow& x, const RepRow& y) { return x.s1.fraction() < y.s1.fraction(); }));
    if (b.s2.numerator != 0) continue;
    for (const auto& row : b.rows) {
      // Ties at equal size may pick a different member than the fixture table.
      if (row.s1.to_string() == "-1/28") seen_a = row.pair.max_abs() == 4;
      if (row.pair == ParamPair{{-4, 1, 3}, {-2, -2, 4}}) seen_b = row.s1.to_string() == "0/1";
    }
  }
  CHECK(seen_a);
  CHECK(seen_b);
  CHECK(smaller_representative(ParamPair{{1, 0, -1}, {0, 0, 0}}, ParamPair{{2, 0, -2}, {0, 0, 0}}));
  CHECK_FALSE(smaller_representative(ParamPair{{2, 0, -2}, {0, 0, 0}}, ParamPair{{1, 0, -1}, {0, 0, 0}}));
}

TEST_CASE("ambiguity escalates, then throws") {
  auto recs = r1_records();
  recs.resize(2);
  for (auto& r : recs) {
    r.ks->s2_rat.exact = false;
    r.ks->s1_rat.exact = false;
  }
  // Second record's s2 sits inside the ambiguity window around the first.
  BigFloat s2 = recs[0].ks->s2.value();
  mpfr_add_d(s2.get(), s2.get(), std::ldexp(1.0, -100), MPFR_RNDN);
  recs[1].ks->s2 = ModOneReal::from_reduced(s2);
  recs[1].ks->s1 = recs[0].ks->s1;
  ClassifyOptions opt;
  try {
    classify(recs, opt);
    FAIL("expected AmbiguousMatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kAmbiguousMatch);
  }
  int calls = 0;
  const KSValues fixed = *recs[0].ks;
  opt.recompute = [&](const ParamPair&, int) {
    ++calls;
    return fixed;
  };
  const auto classes = classify(recs, opt);
  CHECK(calls > 0);
  CHECK(classes.size() == 1);
}
