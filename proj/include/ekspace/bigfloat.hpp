#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <mpfr.h>

namespace ekspace {

/// Owning RAII handle for an MPFR value with a fixed precision. Arithmetic is
/// done through the raw mpfr_* API on get(); this type only manages lifetime,
/// conversion and decimal I/O.
class BigFloat {
 public:
  explicit BigFloat(int precision_bits = 130) { mpfr_init2(v_, precision_bits); mpfr_set_zero(v_, 1); }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  static BigFloat from_int(std::int64_t v, int precision_bits);
  static BigFloat from_fraction(std::int64_t num, std::int64_t den, int precision_bits);
  /// Parses a decimal string, correctly rounded to precision_bits.
  static BigFloat parse(std::string_view text, int precision_bits);

  int precision() const { return static_cast<int>(mpfr_get_prec(v_)); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// Binary exponent e with 2^(e-1) <= |x| < 2^e; meaningless for zero.
  long exponent() const { return mpfr_get_exp(v_); }

  /// Scientific decimal with the given number of significant digits,
  /// e.g. "-4.6428571428e-01". Zero prints as "0".
  std::string to_decimal(int digits) const;

  /// Digits needed so that to_decimal/parse round-trips at this precision.
  static int decimal_digits(int precision_bits);

  friend bool operator==(const BigFloat& a, const BigFloat& b) {
    return a.precision() == b.precision() && mpfr_equal_p(a.v_, b.v_) != 0;
  }

 private:
  mpfr_t v_;
};

}  // namespace ekspace
