#pragma once

// Recovery of exact rationals from high-precision values in [-1/2, 1/2) by
// continued-fraction convergents.

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ekspace/bigfloat.hpp"
#include "ekspace/kreck_stolz.hpp"

namespace ekspace {

using Convergent = std::pair<std::int64_t, std::int64_t>;

/// Exact rational with positive denominator, kept in lowest terms.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Fraction make(std::int64_t n, std::int64_t d);
  Fraction operator+(const Fraction& o) const;
  Fraction operator-(const Fraction& o) const;
  /// Representative in [0, 1).
  Fraction mod_one() const;
  bool is_integer() const { return den == 1; }
  std::string to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

  friend bool operator==(const Fraction&, const Fraction&) = default;
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
    return static_cast<__int128>(a.num) * b.den <=> static_cast<__int128>(b.num) * a.den;
  }
};

struct RationalInvariant {
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;
  /// Distance on R/Z between the value and numerator/denominator.
  BigFloat residual;
  bool exact = false;

  /// "n/d", e.g. "-1/28" or "0/1".
  std::string to_string() const;
  Fraction fraction() const { return {numerator, denominator}; }
  /// True when both are exact and numerator/denominator agree.
  bool same_rational(const RationalInvariant& o) const {
    return exact && o.exact && numerator == o.numerator && denominator == o.denominator;
  }
};

/// Convergents p_i/q_i of the continued fraction of x, taken from the exact
/// binary value of x. Denominators are strictly increasing; when two
/// consecutive convergents share a denominator only the later one is kept.
/// Stops after max_terms partial quotients, when the expansion terminates or
/// when a term would leave int64.
std::vector<Convergent> cf_convergents(const BigFloat& x, int max_terms = 64);

/// n/d reduced to lowest terms and into [-1/2, 1/2); d must be positive.
Convergent reduce_rational(std::int64_t n, std::int64_t d);

/// Distance from x to n/d on R/Z, at the precision of x.
BigFloat rational_residual(const BigFloat& x, std::int64_t n, std::int64_t d);

constexpr std::int64_t kDefaultDenBound = 100000000;
constexpr int kDefaultRationalizeBits = 80;

/// First convergent with denominator <= den_bound and |x - n/d| < 2^-tol_bits
/// (exact), or else the last convergent within the bound (inexact).
RationalInvariant rationalize(const BigFloat& x, std::int64_t den_bound = kDefaultDenBound,
                              int tol_bits = kDefaultRationalizeBits);
inline RationalInvariant rationalize(const ModOneReal& x, std::int64_t den_bound = kDefaultDenBound,
                                     int tol_bits = kDefaultRationalizeBits) {
  return rationalize(x.value(), den_bound, tol_bits);
}

}  // namespace ekspace
