#include "ekspace/classify.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "ekspace/error.hpp"

namespace ekspace {

namespace {

using FamilyKey = std::tuple<std::int64_t, WideInt, WideInt>;

FamilyKey family_of(const SpaceRecord& r, bool strict) {
  if (strict) return {r.inv.abs_r, r.inv.r.sign() > 0 ? r.inv.s : -r.inv.s, r.inv.p1};
  return {r.inv.abs_r, WideInt(r.inv.s_mod), WideInt(r.inv.p1_mod)};
}

auto pair_order(const ParamPair& p) { return std::make_tuple(p.sum(), p.k[0], p.k[1], p.l[0], p.l[1]); }

// Orders two values in [-1/2, 1/2): exactly when both are exact rationals.
bool value_less(const RationalInvariant& ra, const BigFloat& a, const RationalInvariant& rb, const BigFloat& b) {
  if (ra.exact && rb.exact) return ra.fraction() < rb.fraction();
  return mpfr_cmp(a.get(), b.get()) < 0;
}

struct Comparer {
  const ClassifyOptions& opt;
  BigFloat tol;

  // Which invariant of the record is compared.
  enum class Field { kS1, kS2 };

  static const RationalInvariant& rat(const KSValues& v, Field f) { return f == Field::kS1 ? v.s1_rat : v.s2_rat; }
  static const BigFloat& val(const KSValues& v, Field f) {
    return f == Field::kS1 ? v.s1.value() : v.s2.value();
  }

  bool same(const SpaceRecord& a, const SpaceRecord& b, Field f) const {
    const Match m = compare_mod_one(rat(*a.ks, f), val(*a.ks, f), rat(*b.ks, f), val(*b.ks, f), tol);
    if (m != Match::kAmbiguous) return m == Match::kSame;
    const std::string what = a.pair.to_string() + " vs " + b.pair.to_string();
    if (!opt.recompute) throw Error(ErrorCode::kAmbiguousMatch, what);
    const int bits = 2 * opt.precision.mantissa_bits;
    const KSValues ha = opt.recompute(a.pair, bits);
    const KSValues hb = opt.recompute(b.pair, bits);
    BigFloat fine(bits);
    mpfr_set_ui_2exp(fine.get(), 1, -2 * opt.precision.compare_bits, MPFR_RNDN);
    const Match again = compare_mod_one(rat(ha, f), val(ha, f), rat(hb, f), val(hb, f), fine);
    if (again == Match::kAmbiguous) throw Error(ErrorCode::kAmbiguousMatch, what + " at " + std::to_string(bits) + " bits");
    return again == Match::kSame;
  }
};

}  // namespace

Match compare_mod_one(const RationalInvariant& ra, const BigFloat& a, const RationalInvariant& rb,
                      const BigFloat& b, const BigFloat& tol) {
  if (ra.exact && rb.exact) return ra.same_rational(rb) ? Match::kSame : Match::kDifferent;
  const BigFloat d = mod_one_distance(a, b);
  BigFloat bound(tol.precision());
  mpfr_div_2ui(bound.get(), tol.get(), 1, MPFR_RNDN);
  if (mpfr_cmp(d.get(), bound.get()) < 0) return Match::kSame;
  mpfr_mul_2ui(bound.get(), tol.get(), 1, MPFR_RNDN);
  if (mpfr_cmp(d.get(), bound.get()) > 0) return Match::kDifferent;
  return Match::kAmbiguous;
}

std::vector<HomeoClass> classify(std::vector<SpaceRecord> records, const ClassifyOptions& opt) {
  std::erase_if(records, [](const SpaceRecord& r) { return !r.ks.has_value(); });
  std::sort(records.begin(), records.end(), [&](const SpaceRecord& a, const SpaceRecord& b) {
    const auto fa = family_of(a, opt.strict_s), fb = family_of(b, opt.strict_s);
    if (fa != fb) return fa < fb;
    return pair_order(a.pair) < pair_order(b.pair);
  });

  const Comparer cmp{opt, opt.precision.tolerance()};
  std::vector<HomeoClass> out;
  std::size_t begin = 0;
  while (begin < records.size()) {
    const FamilyKey family = family_of(records[begin], opt.strict_s);
    std::size_t end = begin;
    while (end < records.size() && family_of(records[end], opt.strict_s) == family) ++end;

    std::vector<HomeoClass> found;
    for (std::size_t i = begin; i < end; ++i) {
      SpaceRecord& rec = records[i];
      auto it = std::find_if(found.begin(), found.end(), [&](const HomeoClass& c) {
        return cmp.same(c.members.front(), rec, Comparer::Field::kS2);
      });
      if (it == found.end()) {
        HomeoClass c;
        c.key = HomeoKey{std::get<0>(family), std::get<1>(family), std::get<2>(family), rec.ks->s2_rat,
                         rec.ks->s2.value()};
        found.push_back(std::move(c));
        it = found.end() - 1;
      }
      it->members.push_back(std::move(rec));
    }

    for (auto& c : found) {
      for (std::size_t m = 0; m < c.members.size(); ++m) {
        auto d = std::find_if(c.diffeo_classes.begin(), c.diffeo_classes.end(), [&](const DiffeoClass& dc) {
          return cmp.same(c.members[dc.members.front()], c.members[m], Comparer::Field::kS1);
        });
        if (d == c.diffeo_classes.end()) {
          c.diffeo_classes.push_back(DiffeoClass{c.members[m].ks->s1_rat, c.members[m].ks->s1.value(), {}});
          d = c.diffeo_classes.end() - 1;
        }
        d->members.push_back(m);
      }
      std::sort(c.diffeo_classes.begin(), c.diffeo_classes.end(), [](const DiffeoClass& a, const DiffeoClass& b) {
        return value_less(a.s1, a.s1_value, b.s1, b.s1_value);
      });
    }
    std::sort(found.begin(), found.end(), [](const HomeoClass& a, const HomeoClass& b) {
      return value_less(a.key.s2, a.key.s2_value, b.key.s2, b.key.s2_value);
    });
    for (auto& c : found) out.push_back(std::move(c));
    begin = end;
  }
  return out;
}

std::vector<CountRow> count_table(const std::vector<HomeoClass>& classes) {
  std::map<std::int64_t, CountRow> rows;
  for (const auto& c : classes) {
    CountRow& row = rows[c.key.abs_r];
    row.abs_r = c.key.abs_r;
    ++row.top;
    const std::size_t n = c.smooth_count();
    if (n == 28) {
      ++row.n28;
    } else if (n == 27) {
      ++row.n27;
    } else if (n >= 14 && n <= 26) {
      ++row.n14_26;
    } else if (n >= 2 && n <= 13) {
      ++row.n2_13;
    } else if (n == 1) {
      ++row.n1;
    }
  }
  std::vector<CountRow> out;
  for (const auto& [r, row] : rows) out.push_back(row);
  return out;
}

bool smaller_representative(const ParamPair& a, const ParamPair& b) {
  auto abs_sum = [](const ParamPair& p) {
    std::int64_t s = 0;
    for (int i = 0; i < 3; ++i) s += std::abs(p.k[i]) + std::abs(p.l[i]);
    return s;
  };
  const auto ka = std::make_tuple(a.max_abs(), abs_sum(a), pair_order(a));
  const auto kb = std::make_tuple(b.max_abs(), abs_sum(b), pair_order(b));
  return ka < kb;
}

std::vector<RepBlock> smallest_reps(const std::vector<HomeoClass>& classes, std::int64_t abs_r,
                                    bool nonnegative_s2_only) {
  std::vector<RepBlock> out;
  for (const auto& c : classes) {
    if (c.key.abs_r != abs_r) continue;
    if (nonnegative_s2_only && c.key.s2_value.sign() < 0) continue;
    RepBlock block{c.key.abs_r, c.key.s_key, c.key.p1_key, c.key.s2, c.key.s2_value, {}};
    for (const auto& d : c.diffeo_classes) {
      std::size_t best = d.members.front();
      for (std::size_t m : d.members) {
        if (smaller_representative(c.members[m].pair, c.members[best].pair)) best = m;
      }
      block.rows.push_back({c.members[best].pair, d.s1, d.s1_value});
    }
    out.push_back(std::move(block));
  }
  return out;
}

std::vector<OrbitRow> orbit_summary(const std::vector<HomeoClass>& classes) {
  std::vector<OrbitRow> out;
  std::size_t begin = 0;
  while (begin < classes.size()) {
    const auto& k0 = classes[begin].key;
    std::size_t end = begin;
    while (end < classes.size() && classes[end].key.abs_r == k0.abs_r && classes[end].key.s_key == k0.s_key &&
           classes[end].key.p1_key == k0.p1_key) {
      ++end;
    }
    OrbitRow row;
    row.abs_r = k0.abs_r;
    row.s_key = k0.s_key;
    row.p1_key = k0.p1_key;
    row.class_count = end - begin;

    std::vector<Fraction> s2;
    for (std::size_t i = begin; i < end; ++i) {
      const HomeoClass& c = classes[i];
      if (!c.key.s2.exact) {
        row.violations.push_back("inexact s2 " + c.key.s2.to_string());
        continue;
      }
      s2.push_back(c.key.s2.fraction().mod_one());
      if (c.smooth_count() > 28) {
        row.violations.push_back("smooth count " + std::to_string(c.smooth_count()) + " exceeds 28");
      }
      std::optional<Fraction> base;
      for (const auto& d : c.diffeo_classes) {
        if (!d.s1.exact) {
          row.violations.push_back("inexact s1 " + d.s1.to_string());
          continue;
        }
        if (!base || d.s1.fraction() < *base) base = d.s1.fraction();
      }
      if (!base) continue;
      for (const auto& d : c.diffeo_classes) {
        if (!d.s1.exact) continue;
        const Fraction diff = d.s1.fraction() - *base;
        if (static_cast<__int128>(diff.num) * 28 % diff.den != 0) {
          row.violations.push_back("s1 " + d.s1.to_string() + " off the 1/28 lattice of " + base->to_string());
        }
      }
      if (std::find(row.s1_bases.begin(), row.s1_bases.end(), *base) == row.s1_bases.end()) {
        row.s1_bases.push_back(*base);
      }
    }
    std::sort(row.s1_bases.begin(), row.s1_bases.end());

    std::sort(s2.begin(), s2.end());
    s2.erase(std::unique(s2.begin(), s2.end()), s2.end());
    if (!s2.empty()) {
      if (s2.size() == 1) {
        row.s2_base = s2.front();
      } else {
        Fraction step = (s2.front() + Fraction{1, 1}) - s2.back();
        for (std::size_t i = 1; i < s2.size(); ++i) step = std::min(step, s2[i] - s2[i - 1]);
        row.s2_step = step;
        // base = s2[0] mod step
        const __int128 n = static_cast<__int128>(s2.front().num) * step.den;
        const __int128 d = static_cast<__int128>(s2.front().den) * step.num;
        const auto multiples = static_cast<std::int64_t>(n / d);
        row.s2_base = s2.front() - Fraction::make(multiples * step.num, step.den);
        for (const auto& v : s2) {
          const Fraction x = v - row.s2_base;
          if (static_cast<__int128>(x.num) * step.den % (static_cast<__int128>(x.den) * step.num) != 0) {
            row.violations.push_back("s2 " + v.to_string() + " not on base + step lattice");
          }
        }
      }
    }
    out.push_back(std::move(row));
    begin = end;
  }
  return out;
}

void require_orbit_pattern(const std::vector<OrbitRow>& rows) {
  for (const auto& row : rows) {
    if (!row.violations.empty()) {
      throw Error(ErrorCode::kPatternViolation, "|r|=" + std::to_string(row.abs_r) + " s=" + row.s_key.to_string() +
                                                    " p1=" + row.p1_key.to_string() + ": " + row.violations.front());
    }
  }
}

}  // namespace ekspace
