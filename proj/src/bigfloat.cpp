#include "ekspace/bigfloat.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "ekspace/error.hpp"

namespace ekspace {

BigFloat BigFloat::from_int(std::int64_t v, int precision_bits) {
  BigFloat out(precision_bits);
  mpfr_set_sj(out.v_, v, MPFR_RNDN);
  return out;
}

BigFloat BigFloat::from_fraction(std::int64_t num, std::int64_t den, int precision_bits) {
  BigFloat out(precision_bits);
  mpfr_set_sj(out.v_, num, MPFR_RNDN);
  mpfr_div_si(out.v_, out.v_, static_cast<long>(den), MPFR_RNDN);
  return out;
}

BigFloat BigFloat::parse(std::string_view text, int precision_bits) {
  BigFloat out(precision_bits);
  const std::string s(text);
  char* end = nullptr;
  if (!s.empty()) mpfr_strtofr(out.v_, s.c_str(), &end, 10, MPFR_RNDN);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw Error(ErrorCode::kFormatError, "bad decimal '" + s + "'");
  }
  return out;
}

std::string BigFloat::to_decimal(int digits) const {
  if (mpfr_zero_p(v_)) return "0";
  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<std::size_t>(digits), v_, MPFR_RNDN);
  std::string mantissa(raw);
  mpfr_free_str(raw);
  std::string out;
  if (mantissa.front() == '-') {
    out.push_back('-');
    mantissa.erase(0, 1);
  }
  out.push_back(mantissa[0]);
  out.push_back('.');
  out.append(mantissa, 1, std::string::npos);
  const long e = static_cast<long>(exp10) - 1;
  char buf[32];
  std::snprintf(buf, sizeof buf, "e%+03ld", e);
  out += buf;
  return out;
}

int BigFloat::decimal_digits(int precision_bits) {
  return static_cast<int>(std::ceil(precision_bits * 0.30103)) + 2;
}

}  // namespace ekspace
