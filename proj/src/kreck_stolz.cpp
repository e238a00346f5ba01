#include "ekspace/kreck_stolz.hpp"

#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ekspace/error.hpp"
#include "ekspace/invariants.hpp"

namespace ekspace {

namespace {

// sin, cos, cot and csc of m*pi/n for m in [0, n). Entries are evaluated from
// the exact rational angle, folded into [0, pi/2] so that values near the
// poles keep full relative precision.
struct AngleTable {
  std::vector<BigFloat> sin, cos, cot, csc;
};

std::unique_ptr<AngleTable> build_angle_table(std::int64_t n, int prec) {
  auto table = std::make_unique<AngleTable>();
  const int work = prec + 32;
  BigFloat pi(work), angle(work), value(work);
  mpfr_const_pi(pi.get(), MPFR_RNDN);

  auto sin_of = [&](std::int64_t num, std::int64_t den) {
    // sin(num * pi / den) at `work` bits, rounded to `prec`.
    mpfr_mul_si(angle.get(), pi.get(), static_cast<long>(num), MPFR_RNDN);
    mpfr_div_si(angle.get(), angle.get(), static_cast<long>(den), MPFR_RNDN);
    mpfr_sin(value.get(), angle.get(), MPFR_RNDN);
    BigFloat out(prec);
    mpfr_set(out.get(), value.get(), MPFR_RNDN);
    return out;
  };

  table->sin.reserve(n);
  table->cos.reserve(n);
  table->cot.reserve(n);
  table->csc.reserve(n);
  for (std::int64_t m = 0; m < n; ++m) {
    // sin(m pi/n) = sin((n-m) pi/n); cos(m pi/n) = sin((n-2m) pi/(2n)).
    BigFloat s = sin_of(2 * m <= n ? m : n - m, n);
    BigFloat c = sin_of(n - 2 * m, 2 * n);
    BigFloat ct(prec), cs(prec);
    if (m != 0) {
      mpfr_div(ct.get(), c.get(), s.get(), MPFR_RNDN);
      mpfr_ui_div(cs.get(), 1, s.get(), MPFR_RNDN);
    }
    table->sin.push_back(std::move(s));
    table->cos.push_back(std::move(c));
    table->cot.push_back(std::move(ct));
    table->csc.push_back(std::move(cs));
  }
  return table;
}

const AngleTable& angle_table(std::int64_t n, int prec) {
  thread_local std::map<std::pair<std::int64_t, int>, std::unique_ptr<AngleTable>> cache;
  auto& slot = cache[{n, prec}];
  if (!slot) slot = build_angle_table(n, prec);
  return *slot;
}

std::int64_t positive_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

void set_wide(mpfr_ptr dst, WideInt v) {
  if (v.fits_int64()) {
    mpfr_set_sj(dst, v.to_int64(), MPFR_RNDN);
  } else {
    mpfr_set_str(dst, v.to_string().c_str(), 10, MPFR_RNDN);
  }
}

BigFloat reduce_value(const BigFloat& x, ModOneConvention convention) {
  BigFloat out(x.precision());
  BigFloat half(x.precision());
  mpfr_set_d(half.get(), 0.5, MPFR_RNDN);
  if (convention == ModOneConvention::kSymmetric) {
    BigFloat shifted(x.precision() + 8);
    mpfr_add(shifted.get(), x.get(), half.get(), MPFR_RNDN);
    mpfr_floor(shifted.get(), shifted.get());
    mpfr_sub(out.get(), x.get(), shifted.get(), MPFR_RNDN);
  } else {
    BigFloat floor_x(x.precision() + 8);
    mpfr_floor(floor_x.get(), x.get());
    mpfr_sub(out.get(), x.get(), floor_x.get(), MPFR_RNDN);
    mpfr_sub(out.get(), out.get(), half.get(), MPFR_RNDN);
  }
  // Rounding can land exactly on the excluded endpoint.
  if (mpfr_cmp_d(out.get(), 0.5) >= 0) mpfr_sub_ui(out.get(), out.get(), 1, MPFR_RNDN);
  if (mpfr_cmp_d(out.get(), -0.5) < 0) mpfr_add_ui(out.get(), out.get(), 1, MPFR_RNDN);
  return out;
}

// s1(L) and s2(L) before reduction mod 1.
struct RawLens {
  BigFloat s1;
  BigFloat s2_re;
  BigFloat s2_im;
};

RawLens raw_lens(const LensSpace& lens, int prec) {
  const LensSums sums = lens_sums(lens, prec);
  RawLens out{BigFloat(prec), BigFloat(prec), BigFloat(prec)};
  const long p = static_cast<long>(lens.p);
  BigFloat tmp(prec);
  mpfr_div_si(out.s1.get(), sums.cot.get(), 224L * p, MPFR_RNDN);
  mpfr_div_si(tmp.get(), sums.csc.get(), 16L * p, MPFR_RNDN);
  mpfr_add(out.s1.get(), out.s1.get(), tmp.get(), MPFR_RNDN);
  mpfr_div_si(out.s2_re.get(), sums.exp_re.get(), 16L * p, MPFR_RNDN);
  mpfr_div_si(out.s2_im.get(), sums.exp_im.get(), 16L * p, MPFR_RNDN);
  return out;
}

struct RawSpace {
  BigFloat s1;
  BigFloat s2;
  BigFloat s2_im;
  std::array<RawLens, 3> lenses;
};

RawSpace raw_space(const std::array<LensSpace, 3>& lenses, WideInt q, WideInt w, int prec) {
  RawSpace out{BigFloat(prec), BigFloat(prec), BigFloat(prec),
               {raw_lens(lenses[0], prec), raw_lens(lenses[1], prec), raw_lens(lenses[2], prec)}};
  BigFloat qv(prec), wv(prec), tmp(prec);
  set_wide(qv.get(), q);
  set_wide(wv.get(), w);

  // s1 = sign(w)/(2^5 7) - q^2/(2^7 7 w) - sum s1(L_i)
  mpfr_set_si(out.s1.get(), w.sign(), MPFR_RNDN);
  mpfr_div_ui(out.s1.get(), out.s1.get(), 224, MPFR_RNDN);
  mpfr_sqr(tmp.get(), qv.get(), MPFR_RNDN);
  mpfr_div(tmp.get(), tmp.get(), wv.get(), MPFR_RNDN);
  mpfr_div_ui(tmp.get(), tmp.get(), 896, MPFR_RNDN);
  mpfr_sub(out.s1.get(), out.s1.get(), tmp.get(), MPFR_RNDN);

  // s2 = (q-2)/(2^4 3 w) - sum s2(L_i)
  mpfr_sub_ui(tmp.get(), qv.get(), 2, MPFR_RNDN);
  mpfr_div(tmp.get(), tmp.get(), wv.get(), MPFR_RNDN);
  mpfr_div_ui(out.s2.get(), tmp.get(), 48, MPFR_RNDN);

  for (const auto& lens : out.lenses) {
    mpfr_sub(out.s1.get(), out.s1.get(), lens.s1.get(), MPFR_RNDN);
    mpfr_sub(out.s2.get(), out.s2.get(), lens.s2_re.get(), MPFR_RNDN);
    mpfr_sub(out.s2_im.get(), out.s2_im.get(), lens.s2_im.get(), MPFR_RNDN);
  }
  return out;
}

bool leftmost_column_qualifies(const ParamPair& p) {
  const DifferenceMatrix a = difference_matrix(p);
  const Triple c = a.column(0);
  if (c[0] == 0 || c[1] == 0 || c[2] == 0) return false;
  return std::gcd(c[0], c[1]) == 1 && std::gcd(c[0], c[2]) == 1 && std::gcd(c[1], c[2]) == 1;
}

void check_agreement(const BigFloat& a, const BigFloat& b, const BigFloat& tol, const char* what,
                     const std::string& context) {
  if (mpfr_cmp(mod_one_distance(a, b).get(), tol.get()) >= 0) {
    throw Error(ErrorCode::kPrecisionLoss,
                std::string(what) + " unstable under extra guard bits for " + context);
  }
}

}  // namespace

BigFloat PrecisionConfig::tolerance() const {
  BigFloat t(mantissa_bits);
  mpfr_set_ui_2exp(t.get(), 1, -compare_bits, MPFR_RNDN);
  return t;
}

void PrecisionConfig::validate() const {
  if (mantissa_bits < MPFR_PREC_MIN || compare_bits <= 0 || compare_bits >= mantissa_bits ||
      guard_bits < 0) {
    throw std::invalid_argument("precision config needs 0 < compare_bits < mantissa_bits");
  }
}

ModOneReal ModOneReal::reduce(const BigFloat& x, ModOneConvention convention) {
  return ModOneReal(reduce_value(x, convention));
}

ModOneReal ModOneReal::from_reduced(const BigFloat& x) {
  if (mpfr_cmp_d(x.get(), -0.5) >= 0 && mpfr_cmp_d(x.get(), 0.5) < 0) return ModOneReal(x);
  return reduce(x, ModOneConvention::kSymmetric);
}

BigFloat mod_one_distance(const BigFloat& a, const BigFloat& b) {
  const int prec = std::max(a.precision(), b.precision());
  BigFloat d(prec);
  mpfr_sub(d.get(), a.get(), b.get(), MPFR_RNDN);
  d = reduce_value(d, ModOneConvention::kSymmetric);
  mpfr_abs(d.get(), d.get(), MPFR_RNDN);
  return d;
}

LensSpace make_lens(std::int64_t p, const std::array<std::int64_t, 4>& weights) {
  if (p == 0) throw Error(ErrorCode::kInvalidLens, "p = 0");
  for (auto w : weights) {
    if (w == 0 || std::gcd(p, w) != 1) {
      throw Error(ErrorCode::kInvalidLens,
                  "weight " + std::to_string(w) + " not coprime to p = " + std::to_string(p));
    }
  }
  return LensSpace{p, weights};
}

LensSums lens_sums(const LensSpace& lens, int prec) {
  LensSums out{BigFloat(prec), BigFloat(prec), BigFloat(prec), BigFloat(prec)};
  const std::int64_t n = lens.p < 0 ? -lens.p : lens.p;
  if (n <= 1) return out;
  const std::int64_t sg = lens.p < 0 ? -1 : 1;
  const std::int64_t two_n = 2 * n;
  const AngleTable& table = angle_table(n, prec);

  std::array<std::int64_t, 4> steps{};
  for (int j = 0; j < 4; ++j) steps[j] = positive_mod(sg * lens.weights[j], two_n);
  const std::int64_t exp_step = positive_mod(2 * sg, two_n);

  BigFloat cot_prod(prec), csc_prod(prec), factor(prec), tmp(prec);
  std::array<std::int64_t, 4> m{};
  std::int64_t m_exp = 0;
  for (std::int64_t k = 1; k < n; ++k) {
    // Angles are k * step * pi / n, tracked as integer indices mod 2n.
    bool negative = false;
    for (int j = 0; j < 4; ++j) {
      m[j] += steps[j];
      if (m[j] >= two_n) m[j] -= two_n;
      const std::int64_t idx = m[j] >= n ? m[j] - n : m[j];
      negative ^= m[j] >= n;  // csc(x + pi) = -csc(x); cot has period pi
      if (j == 0) {
        mpfr_set(cot_prod.get(), table.cot[idx].get(), MPFR_RNDN);
        mpfr_set(csc_prod.get(), table.csc[idx].get(), MPFR_RNDN);
      } else {
        mpfr_mul(cot_prod.get(), cot_prod.get(), table.cot[idx].get(), MPFR_RNDN);
        mpfr_mul(csc_prod.get(), csc_prod.get(), table.csc[idx].get(), MPFR_RNDN);
      }
    }
    if (negative) mpfr_neg(csc_prod.get(), csc_prod.get(), MPFR_RNDN);
    mpfr_add(out.cot.get(), out.cot.get(), cot_prod.get(), MPFR_RNDN);
    mpfr_add(out.csc.get(), out.csc.get(), csc_prod.get(), MPFR_RNDN);

    m_exp += exp_step;
    if (m_exp >= two_n) m_exp -= two_n;
    const bool flip = m_exp >= n;
    const std::int64_t idx = flip ? m_exp - n : m_exp;
    // (cos - 1) * csc_prod and sin * csc_prod, with cos, sin negated past pi.
    if (flip) {
      mpfr_neg(factor.get(), table.cos[idx].get(), MPFR_RNDN);
    } else {
      mpfr_set(factor.get(), table.cos[idx].get(), MPFR_RNDN);
    }
    mpfr_sub_ui(factor.get(), factor.get(), 1, MPFR_RNDN);
    mpfr_mul(tmp.get(), factor.get(), csc_prod.get(), MPFR_RNDN);
    mpfr_add(out.exp_re.get(), out.exp_re.get(), tmp.get(), MPFR_RNDN);
    mpfr_mul(tmp.get(), table.sin[idx].get(), csc_prod.get(), MPFR_RNDN);
    if (flip) {
      mpfr_sub(out.exp_im.get(), out.exp_im.get(), tmp.get(), MPFR_RNDN);
    } else {
      mpfr_add(out.exp_im.get(), out.exp_im.get(), tmp.get(), MPFR_RNDN);
    }
  }
  return out;
}

ModOneReal lens_s1(const LensSpace& lens, const PrecisionConfig& cfg) {
  cfg.validate();
  const RawLens raw = raw_lens(lens, cfg.mantissa_bits);
  ModOneReal value = ModOneReal::reduce(raw.s1, ModOneConvention::kSymmetric);
  if (cfg.self_check) {
    const RawLens fine = raw_lens(lens, cfg.mantissa_bits + cfg.guard_bits);
    check_agreement(raw.s1, fine.s1, cfg.tolerance(), "lens s1", "L(" + std::to_string(lens.p) + ")");
  }
  return value;
}

LensS2 lens_s2(const LensSpace& lens, const PrecisionConfig& cfg) {
  cfg.validate();
  const RawLens raw = raw_lens(lens, cfg.mantissa_bits);
  LensS2 out{ModOneReal::reduce(raw.s2_re, ModOneConvention::kSymmetric), raw.s2_im};
  mpfr_abs(out.imag_residual.get(), out.imag_residual.get(), MPFR_RNDN);
  if (cfg.self_check) {
    const RawLens fine = raw_lens(lens, cfg.mantissa_bits + cfg.guard_bits);
    check_agreement(raw.s2_re, fine.s2_re, cfg.tolerance(), "lens s2", "L(" + std::to_string(lens.p) + ")");
  }
  return out;
}

WideInt ks_q(const ParamPair& p) {
  const DifferenceMatrix a = difference_matrix(p);
  WideInt q = 0;
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < 3; ++i) q += WideInt(a(i, j)) * WideInt(a(i, j));
  }
  const WideInt dl = WideInt(p.l[0]) - WideInt(p.l[1]);
  return q - dl * dl;
}

WideInt ks_w(const ParamPair& p) {
  const DifferenceMatrix a = difference_matrix(p);
  const WideInt w = invariant_r(p) * WideInt(a(0, 0)) * WideInt(a(1, 0)) * WideInt(a(2, 0));
  if (w == WideInt(0)) throw Error(ErrorCode::kZeroW, p.to_string());
  return w;
}

namespace {

// A zero weight only occurs next to p = +-1, where L is S^7 and every sum is
// empty; make_lens would reject it, so only the gcd condition is checked here.
LensSpace cobordism_lens(std::int64_t p, const std::array<std::int64_t, 4>& weights) {
  if (p == 1 || p == -1) return LensSpace{p, weights};
  return make_lens(p, weights);
}

}  // namespace

std::array<LensSpace, 3> kruggel_lenses(const ParamPair& p) {
  const DifferenceMatrix a = difference_matrix(p);
  return {cobordism_lens(a(0, 0), {a(1, 0), a(2, 0), a(1, 1), a(2, 1)}),
          cobordism_lens(a(1, 0), {a(0, 0), a(2, 0), a(0, 1), a(2, 1)}),
          cobordism_lens(a(2, 0), {a(0, 0), a(1, 0), a(0, 1), a(1, 1)})};
}

KSResult ks_invariants_normalized(const ParamPair& p, const PrecisionConfig& cfg) {
  cfg.validate();
  if (!leftmost_column_qualifies(p)) {
    throw Error(ErrorCode::kNoConditionC, "leftmost column does not qualify for " + p.to_string());
  }
  const auto lenses = kruggel_lenses(p);
  KSResult out;
  out.q = ks_q(p);
  out.w = ks_w(p);
  out.normalized_pair = p;
  out.precision_bits = cfg.mantissa_bits;

  const RawSpace raw = raw_space(lenses, out.q, out.w, cfg.mantissa_bits);
  out.s1 = ModOneReal::reduce(raw.s1, cfg.convention);
  out.s2 = ModOneReal::reduce(raw.s2, cfg.convention);
  out.s2_imag_residual = raw.s2_im;
  mpfr_abs(out.s2_imag_residual.get(), out.s2_imag_residual.get(), MPFR_RNDN);
  for (int i = 0; i < 3; ++i) {
    BigFloat imag = raw.lenses[i].s2_im;
    mpfr_abs(imag.get(), imag.get(), MPFR_RNDN);
    out.lens_terms[i] = LensTerm{lenses[i],
                                 ModOneReal::reduce(raw.lenses[i].s1, ModOneConvention::kSymmetric),
                                 ModOneReal::reduce(raw.lenses[i].s2_re, ModOneConvention::kSymmetric),
                                 std::move(imag)};
  }

  const BigFloat tol = cfg.tolerance();
  if (mpfr_cmp(out.s2_imag_residual.get(), tol.get()) >= 0) {
    throw Error(ErrorCode::kImaginaryResidual, p.to_string());
  }
  if (cfg.self_check) {
    const RawSpace fine = raw_space(lenses, out.q, out.w, cfg.mantissa_bits + cfg.guard_bits);
    check_agreement(raw.s1, fine.s1, tol, "s1", p.to_string());
    check_agreement(raw.s2, fine.s2, tol, "s2", p.to_string());
  }
  return out;
}

KSResult ks_invariants(const ParamPair& p, const PrecisionConfig& cfg, const CoprimalityTable& t) {
  return ks_invariants_normalized(normalize_for_kruggel(p, t), cfg);
}

}  // namespace ekspace
