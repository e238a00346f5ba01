#include "ekspace/arith.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

#include "ekspace/error.hpp"

namespace ekspace {

namespace {

[[noreturn]] void overflow(const char* op) {
  throw Error(ErrorCode::kOverflow, std::string("128-bit ") + op);
}

constexpr __int128 kMin128 = static_cast<__int128>(static_cast<unsigned __int128>(1) << 127);

}  // namespace

WideInt WideInt::operator+(WideInt o) const {
  __int128 r;
  if (__builtin_add_overflow(v_, o.v_, &r)) overflow("addition");
  return from_raw(r);
}

WideInt WideInt::operator-(WideInt o) const {
  __int128 r;
  if (__builtin_sub_overflow(v_, o.v_, &r)) overflow("subtraction");
  return from_raw(r);
}

WideInt WideInt::operator*(WideInt o) const {
  __int128 r;
  if (__builtin_mul_overflow(v_, o.v_, &r)) overflow("multiplication");
  return from_raw(r);
}

WideInt WideInt::operator-() const {
  if (v_ == kMin128) overflow("negation");
  return from_raw(-v_);
}

bool WideInt::fits_int64() const {
  return v_ >= std::numeric_limits<std::int64_t>::min() &&
         v_ <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t WideInt::to_int64() const {
  if (!fits_int64()) overflow("narrowing to 64 bits");
  return static_cast<std::int64_t>(v_);
}

std::int64_t WideInt::mod(std::int64_t m) const {
  __int128 r = v_ % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

std::string WideInt::to_string() const {
  if (v_ == 0) return "0";
  unsigned __int128 u = v_ < 0 ? static_cast<unsigned __int128>(0) - static_cast<unsigned __int128>(v_)
                               : static_cast<unsigned __int128>(v_);
  std::string out;
  while (u != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (v_ < 0) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

WideInt WideInt::parse(std::string_view text) {
  bool negative = false;
  std::size_t i = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    negative = text[0] == '-';
    i = 1;
  }
  if (i == text.size()) throw Error(ErrorCode::kFormatError, "empty integer");
  WideInt value;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') {
      throw Error(ErrorCode::kFormatError, "bad integer '" + std::string(text) + "'");
    }
    value = value * 10 + WideInt(negative ? -(c - '0') : (c - '0'));
  }
  return value;
}

std::ostream& operator<<(std::ostream& os, WideInt v) { return os << v.to_string(); }

GcdResult ext_gcd(std::int64_t a, std::int64_t b) {
  // Iterate on |a|, |b| and fix the signs of the cofactors at the end.
  __int128 old_r = a < 0 ? -static_cast<__int128>(a) : a;
  __int128 r = b < 0 ? -static_cast<__int128>(b) : b;
  __int128 old_s = 1, s = 0;
  __int128 old_t = 0, t = 1;
  while (r != 0) {
    const __int128 q = old_r / r;
    __int128 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  GcdResult out;
  out.g = static_cast<std::int64_t>(old_r);
  out.x = static_cast<std::int64_t>(a < 0 ? -old_s : old_s);
  out.y = static_cast<std::int64_t>(b < 0 ? -old_t : old_t);
  return out;
}

CoprimalityTable::CoprimalityTable(int size)
    : size_(std::max(size, 1)), stride_(static_cast<std::size_t>(size_) / 64 + 1) {
  bits_.assign((static_cast<std::size_t>(size_) + 1) * stride_, 0);
  // gcd(i, j) = gcd(j mod i, i): every lookup below hits an earlier row.
  for (std::int64_t i = 1; i <= size_; ++i) {
    for (std::int64_t j = 1; j <= size_; ++j) {
      bool value;
      if (i == 1 || j == 1) {
        value = true;
      } else if (j < i) {
        value = entry(j, i);
      } else {
        const std::int64_t rem = j % i;
        value = rem == 0 ? false : entry(rem, i);
      }
      if (value) {
        bits_[static_cast<std::size_t>(i) * stride_ + (static_cast<std::size_t>(j) >> 6)] |=
            std::uint64_t{1} << (j & 63);
      }
    }
  }
}

bool CoprimalityTable::coprime_slow(std::int64_t a, std::int64_t b) const {
  while (a > size_ || b > size_) {
    if (a < b) std::swap(a, b);
    a %= b;
    if (a == 0) return b == 1;
  }
  return entry(a, b);
}

std::int64_t mod_inverse(WideInt a, std::int64_t m) {
  if (m < 1) throw Error(ErrorCode::kNotInvertible, "modulus must be positive");
  if (m == 1) return 0;
  const std::int64_t reduced = a.mod(m);
  const GcdResult g = ext_gcd(reduced, m);
  if (g.g != 1) {
    throw Error(ErrorCode::kNotInvertible,
                a.to_string() + " mod " + std::to_string(m) + " (gcd " + std::to_string(g.g) + ")");
  }
  std::int64_t x = g.x % m;
  if (x < 0) x += m;
  return x;
}

WideInt sym_poly(const Triple& v, int j) {
  const WideInt a = v[0], b = v[1], c = v[2];
  switch (j) {
    case 1: return a + b + c;
    case 2: return a * b + a * c + b * c;
    case 3: return a * b * c;
    default: throw std::invalid_argument("sym_poly degree must be 1, 2 or 3");
  }
}

std::int64_t sym_residue(WideInt a, std::int64_t m) {
  if (m < 1 || m % 2 == 0) {
    throw Error(ErrorCode::kEvenModulus, "modulus " + std::to_string(m) + " is not a positive odd integer");
  }
  const std::int64_t half = (m - 1) / 2;
  std::int64_t r = a.mod(m);
  if (r > half) r -= m;
  return r;
}

}  // namespace ekspace
