#pragma once

// Exact integer primitives: gcd machinery, the coprimality lookup table,
// modular inverses, symmetric residues and elementary symmetric polynomials.

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ekspace {

using Triple = std::array<std::int64_t, 3>;

/// Signed 128-bit integer with checked arithmetic. Every operation that would
/// leave the representable range throws Error(kOverflow); nothing wraps.
class WideInt {
 public:
  constexpr WideInt() = default;
  constexpr WideInt(std::int64_t v) : v_(v) {}  // NOLINT: implicit by design of the arithmetic

  static constexpr WideInt from_raw(__int128 v) {
    WideInt w;
    w.v_ = v;
    return w;
  }
  constexpr __int128 raw() const { return v_; }

  WideInt operator+(WideInt o) const;
  WideInt operator-(WideInt o) const;
  WideInt operator*(WideInt o) const;
  WideInt operator-() const;
  WideInt& operator+=(WideInt o) { return *this = *this + o; }
  WideInt& operator-=(WideInt o) { return *this = *this - o; }
  WideInt& operator*=(WideInt o) { return *this = *this * o; }

  WideInt abs() const { return v_ < 0 ? -*this : *this; }
  int sign() const { return (v_ > 0) - (v_ < 0); }
  bool fits_int64() const;
  std::int64_t to_int64() const;  // throws kOverflow
  /// Remainder of *this modulo m in [0, m).
  std::int64_t mod(std::int64_t m) const;

  std::string to_string() const;
  static WideInt parse(std::string_view text);  // throws kFormatError

  friend constexpr bool operator==(WideInt a, WideInt b) { return a.v_ == b.v_; }
  friend constexpr std::strong_ordering operator<=>(WideInt a, WideInt b) {
    return a.v_ <=> b.v_;
  }

 private:
  __int128 v_ = 0;
};

std::ostream& operator<<(std::ostream& os, WideInt v);

struct GcdResult {
  std::int64_t g = 0;
  std::int64_t x = 0;
  std::int64_t y = 0;
};

/// Extended Euclid: g = gcd(|a|,|b|) and a*x + b*y = g. gcd(0,0) = 0.
GcdResult ext_gcd(std::int64_t a, std::int64_t b);

/// N x N bit matrix: entry (i,j), 1 <= i,j <= N, is set iff gcd(i,j) = 1.
/// Immutable after construction.
class CoprimalityTable {
 public:
  static constexpr int kDefaultSize = 2000;

  explicit CoprimalityTable(int size = kDefaultSize);

  int size() const { return size_; }

  /// Raw table entry; requires 1 <= i,j <= size().
  bool entry(std::int64_t i, std::int64_t j) const {
    const auto ui = static_cast<std::size_t>(i);
    const auto uj = static_cast<std::size_t>(j);
    return (bits_[ui * stride_ + (uj >> 6)] >> (uj & 63)) & 1u;
  }

  /// True iff a*b != 0 and gcd(|a|,|b|) = 1. Arguments outside the table are
  /// reduced by Euclid steps until both fit.
  bool coprime(std::int64_t a, std::int64_t b) const {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    if (a == 0 || b == 0) return false;
    if (a <= size_ && b <= size_) return entry(a, b);
    return coprime_slow(a, b);
  }

  /// gcd(a, b) == 1, so gcd(0, +-1) = 1 counts. This is the admissibility
  /// test; coprime() is the condition-C test.
  bool gcd_is_one(std::int64_t a, std::int64_t b) const {
    if (a == 0) return b == 1 || b == -1;
    if (b == 0) return a == 1 || a == -1;
    return coprime(a, b);
  }

 private:
  bool coprime_slow(std::int64_t a, std::int64_t b) const;

  int size_;
  std::size_t stride_;
  std::vector<std::uint64_t> bits_;
};

inline bool coprime(std::int64_t a, std::int64_t b, const CoprimalityTable& t) {
  return t.coprime(a, b);
}

/// x with a*x = 1 (mod m), x in [0, m). m = 1 gives 0. Throws kNotInvertible.
std::int64_t mod_inverse(WideInt a, std::int64_t m);

/// j-th elementary symmetric polynomial of v, j in {1,2,3}.
WideInt sym_poly(const Triple& v, int j);

/// Representative of a mod m in [-(m-1)/2, (m-1)/2]; m must be odd and >= 1.
std::int64_t sym_residue(WideInt a, std::int64_t m);

}  // namespace ekspace
