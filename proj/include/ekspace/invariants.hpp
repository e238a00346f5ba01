#pragma once

// Exact integer invariants: r (order of H^4), the cubic invariant s, the
// Pontryagin number p1, their symmetric residues and the linking form.

#include <cstdint>

#include "ekspace/arith.hpp"
#include "ekspace/params.hpp"

namespace ekspace {

/// r = sigma2(k) - sigma2(l).
WideInt invariant_r(const ParamPair& p);
/// s = sigma3(k) - sigma3(l).
WideInt invariant_s(const ParamPair& p);
/// p1 = 2 sigma1(k)^2 - 6 sigma2(k).
WideInt invariant_p1(const ParamPair& p);

/// An element of Q/Z stored as numerator/denominator with the value in
/// [-1/2, 1/2) and the denominator dividing the modulus it came from.
struct Linking {
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;
  friend bool operator==(const Linking&, const Linking&) = default;
};

/// -(s^{-1} mod |r|) / r reduced into [-1/2, 1/2). Throws kNotInvertible.
Linking linking_form(WideInt r, WideInt s);

struct IntegerInvariants {
  WideInt r;
  WideInt s;
  WideInt p1;
  std::int64_t abs_r = 0;
  /// sign(r) s mod |r|, so that (k,l) -> (l,k) leaves it fixed.
  std::int64_t s_mod = 0;
  std::int64_t p1_mod = 0;
  Linking linking;

  friend bool operator==(const IntegerInvariants&, const IntegerInvariants&) = default;
};

/// All of the above for an Eschenburg-Kruggel pair. An even r (including 0)
/// throws kEvenModulus.
IntegerInvariants integer_invariants(const ParamPair& p);

}  // namespace ekspace
