#include "ekspace/invariants.hpp"

#include "ekspace/error.hpp"

namespace ekspace {

WideInt invariant_r(const ParamPair& p) { return sym_poly(p.k, 2) - sym_poly(p.l, 2); }

WideInt invariant_s(const ParamPair& p) { return sym_poly(p.k, 3) - sym_poly(p.l, 3); }

WideInt invariant_p1(const ParamPair& p) {
  const WideInt s1 = sym_poly(p.k, 1);
  return WideInt(2) * s1 * s1 - WideInt(6) * sym_poly(p.k, 2);
}

Linking linking_form(WideInt r, WideInt s) {
  if (r == WideInt(0)) throw Error(ErrorCode::kNotInvertible, "r = 0");
  const std::int64_t m = r.abs().to_int64();
  if (m == 1) return {};
  const std::int64_t inv = mod_inverse(s, m);
  // -inv / r = (-sign(r) * inv) / m
  std::int64_t num = r.sign() > 0 ? (m - inv) % m : inv;
  if (2 * num >= m) num -= m;
  return {num, m};
}

IntegerInvariants integer_invariants(const ParamPair& p) {
  IntegerInvariants out;
  out.r = invariant_r(p);
  out.s = invariant_s(p);
  out.p1 = invariant_p1(p);
  const WideInt abs_r = out.r.abs();
  if (!abs_r.fits_int64() || abs_r.raw() % 2 == 0) {
    throw Error(ErrorCode::kEvenModulus, "r = " + out.r.to_string() + " for " + p.to_string());
  }
  out.abs_r = abs_r.to_int64();
  out.s_mod = sym_residue(out.r.sign() > 0 ? out.s : -out.s, out.abs_r);
  out.p1_mod = sym_residue(out.p1, out.abs_r);
  out.linking = linking_form(out.r, out.s);
  return out;
}

}  // namespace ekspace
