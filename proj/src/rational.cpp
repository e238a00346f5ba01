#include "ekspace/rational.hpp"

#include <gmp.h>

#include <numeric>
#include <stdexcept>

#include "ekspace/error.hpp"

namespace ekspace {

namespace {

struct Mpz {
  mpz_t v;
  Mpz() { mpz_init(v); }
  ~Mpz() { mpz_clear(v); }
  Mpz(const Mpz&) = delete;
  Mpz& operator=(const Mpz&) = delete;
};

}  // namespace

Fraction Fraction::make(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::invalid_argument("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n, d);
  return {n / g, d / g};
}

namespace {

Fraction from_wide(__int128 n, __int128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 a = n < 0 ? -n : n, b = d;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  n /= a;
  d /= a;
  if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX) {
    throw Error(ErrorCode::kOverflow, "fraction does not fit in 64 bits");
  }
  return {static_cast<std::int64_t>(n), static_cast<std::int64_t>(d)};
}

}  // namespace

Fraction Fraction::operator+(const Fraction& o) const {
  return from_wide(static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den,
                   static_cast<__int128>(den) * o.den);
}

Fraction Fraction::operator-(const Fraction& o) const { return *this + Fraction{-o.num, o.den}; }

Fraction Fraction::mod_one() const {
  std::int64_t r = num % den;
  if (r < 0) r += den;
  return {r, den};
}

std::string RationalInvariant::to_string() const {
  return std::to_string(numerator) + "/" + std::to_string(denominator);
}

std::vector<Convergent> cf_convergents(const BigFloat& x, int max_terms) {
  std::vector<Convergent> out;
  if (!mpfr_number_p(x.get())) return out;

  // x = num / den exactly, den a power of two.
  Mpz num, den, a, rem;
  mpfr_exp_t e = mpfr_get_z_2exp(num.v, x.get());
  mpz_set_ui(den.v, 1);
  if (e >= 0) {
    mpz_mul_2exp(num.v, num.v, static_cast<mp_bitcnt_t>(e));
  } else {
    mpz_mul_2exp(den.v, den.v, static_cast<mp_bitcnt_t>(-e));
  }

  // p_{-1}/q_{-1} = 1/0 and p_{-2}/q_{-2} = 0/1.
  __int128 p1 = 1, q1 = 0, p2 = 0, q2 = 1;
  for (int i = 0; i < max_terms && mpz_sgn(den.v) != 0; ++i) {
    mpz_fdiv_qr(a.v, rem.v, num.v, den.v);
    if (!mpz_fits_slong_p(a.v)) break;
    const __int128 ai = mpz_get_si(a.v);
    const __int128 p = ai * p1 + p2;
    const __int128 q = ai * q1 + q2;
    if (p > INT64_MAX || p < INT64_MIN || q > INT64_MAX) break;
    p2 = p1;
    q2 = q1;
    p1 = p;
    q1 = q;
    if (!out.empty() && out.back().second == q) out.pop_back();
    out.emplace_back(static_cast<std::int64_t>(p), static_cast<std::int64_t>(q));
    mpz_swap(num.v, den.v);
    mpz_swap(den.v, rem.v);
  }
  return out;
}

Convergent reduce_rational(std::int64_t n, std::int64_t d) {
  if (d <= 0) throw std::invalid_argument("denominator must be positive");
  const std::int64_t g = std::gcd(n, d);
  n /= g;
  d /= g;
  n %= d;
  if (2 * n >= d) n -= d;
  if (2 * n < -d) n += d;
  return {n, d};
}

BigFloat rational_residual(const BigFloat& x, std::int64_t n, std::int64_t d) {
  BigFloat out(x.precision());
  mpfr_set_sj(out.get(), n, MPFR_RNDN);
  mpfr_div_si(out.get(), out.get(), static_cast<long>(d), MPFR_RNDN);
  return mod_one_distance(x, out);
}

RationalInvariant rationalize(const BigFloat& x, std::int64_t den_bound, int tol_bits) {
  BigFloat tol(x.precision());
  mpfr_set_ui_2exp(tol.get(), 1, -tol_bits, MPFR_RNDN);

  RationalInvariant best;
  best.residual = rational_residual(x, 0, 1);
  for (const auto& [n, d] : cf_convergents(x, 128)) {
    if (d > den_bound) break;
    best.numerator = n;
    best.denominator = d;
    best.residual = rational_residual(x, n, d);
    if (mpfr_cmp(best.residual.get(), tol.get()) < 0) {
      best.exact = true;
      break;
    }
  }
  const auto [n, d] = reduce_rational(best.numerator, best.denominator);
  best.numerator = n;
  best.denominator = d;
  return best;
}

}  // namespace ekspace
