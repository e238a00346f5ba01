#!/usr/bin/env python3
"""Independent high-precision oracle for the Kreck-Stolz invariants.

Evaluates the lens-space sums and the combination formulas with mpmath at a
fixed working precision, using a separate code path from the C++ library
(no shared normalisation helpers, naive angle evaluation). Used to freeze the
regression fixtures in tests/ and to cross-check the representative table.

Usage:
    ks_oracle.py lens P W0 W1 W2 W3
    ks_oracle.py space K0 K1 K2 L0 L1 L2
    ks_oracle.py table tests/data/representatives.tsv
"""
import sys
from fractions import Fraction
from math import gcd

import mpmath as mp

mp.mp.prec = 256


def sigma2(v):
    return v[0] * v[1] + v[0] * v[2] + v[1] * v[2]


def sigma3(v):
    return v[0] * v[1] * v[2]


def lens_sums(p, weights):
    cot_sum = mp.mpf(0)
    csc_sum = mp.mpf(0)
    exp_sum = mp.mpc(0)
    for k in range(1, abs(p)):
        cot_prod = mp.mpf(1)
        csc_prod = mp.mpf(1)
        for w in weights:
            angle = mp.pi * mp.mpf(k * w) / p
            cot_prod *= mp.cot(angle)
            csc_prod *= mp.csc(angle)
        cot_sum += cot_prod
        csc_sum += csc_prod
        exp_sum += (mp.exp(2j * mp.pi * mp.mpf(k) / p) - 1) * csc_prod
    return cot_sum, csc_sum, exp_sum


def lens_s1(p, weights):
    cot_sum, csc_sum, _ = lens_sums(p, weights)
    return cot_sum / (2**5 * 7 * p) + csc_sum / (2**4 * p)


def lens_s2(p, weights):
    _, _, exp_sum = lens_sums(p, weights)
    return exp_sum / (2**4 * p)


def symmetric(x):
    """x mod 1 in [-1/2, 1/2)."""
    return x - mp.floor(x + mp.mpf(1) / 2)


def shifted_half(x):
    """x mod 1 in [0, 1), then shifted by -1/2."""
    return x - mp.floor(x) - mp.mpf(1) / 2


def coprime_line(v):
    return all(x != 0 for x in v) and all(
        gcd(v[i], v[j]) == 1 for i in range(3) for j in range(i + 1, 3))


def space(k, l):
    k, l = list(k), list(l)
    a = [[k[i] - l[j] for j in range(3)] for i in range(3)]
    col = next((j for j in range(3) if coprime_line([a[i][j] for i in range(3)])), None)
    if col is not None:
        l[0], l[col] = l[col], l[0]
    else:
        row = next(j for j in range(3) if coprime_line(a[j]))
        k, l = l, k
        l[0], l[row] = l[row], l[0]
    a = [[k[i] - l[j] for j in range(3)] for i in range(3)]
    r = sigma2(k) - sigma2(l)
    q = sum(a[i][j] ** 2 for i in range(3) for j in range(2)) - (l[0] - l[1]) ** 2
    w = r * a[0][0] * a[1][0] * a[2][0]
    lenses = [
        (a[0][0], [a[1][0], a[2][0], a[1][1], a[2][1]]),
        (a[1][0], [a[0][0], a[2][0], a[0][1], a[2][1]]),
        (a[2][0], [a[0][0], a[1][0], a[0][1], a[1][1]]),
    ]
    sign_w = 1 if w > 0 else -1
    s1 = mp.mpf(sign_w) / (2**5 * 7) - mp.mpf(q * q) / (2**7 * 7 * w)
    s2 = mp.mpc(mp.mpf(q - 2) / (2**4 * 3 * w))
    for p, ws in lenses:
        s1 -= lens_s1(p, ws)
        s2 -= lens_s2(p, ws)
    return r, s1, s2


def to_fraction(x, bound=10**8):
    return Fraction(mp.nstr(x, 70, strip_zeros=False)).limit_denominator(bound)


def main(argv):
    if argv[1] == "lens":
        p, ws = int(argv[2]), [int(x) for x in argv[3:7]]
        s1 = lens_s1(p, ws)
        s2 = lens_s2(p, ws)
        print("s1", mp.nstr(symmetric(s1), 60), to_fraction(symmetric(s1)))
        print("s2", mp.nstr(symmetric(s2.real), 60), to_fraction(symmetric(s2.real)),
              "imag", mp.nstr(s2.imag, 5))
    elif argv[1] == "space":
        v = [int(x) for x in argv[2:8]]
        r, s1, s2 = space(v[:3], v[3:])
        print("r", r)
        print("s1", mp.nstr(shifted_half(s1), 60), to_fraction(shifted_half(s1)))
        print("s2", mp.nstr(shifted_half(s2.real), 60), to_fraction(shifted_half(s2.real)),
              "imag", mp.nstr(s2.imag, 5))
    elif argv[1] == "table":
        bad = 0
        rows = [ln.split("\t") for ln in open(argv[2]).read().splitlines()[1:]]
        for row in rows:
            abs_r, _, _, s2_txt, total, k0, k1, l0, l1, s1_txt = row
            total, k0, k1, l0, l1 = map(int, (total, k0, k1, l0, l1))
            k = (k0, k1, total - k0 - k1)
            l = (l0, l1, total - l0 - l1)
            r, s1, s2 = space(k, l)
            d1 = symmetric(shifted_half(s1) - mp.mpf(Fraction(s1_txt).numerator) / Fraction(s1_txt).denominator)
            d2 = symmetric(shifted_half(s2.real) - mp.mpf(Fraction(s2_txt).numerator) / Fraction(s2_txt).denominator)
            if abs(r) != int(abs_r) or abs(d1) > mp.mpf(2)**-150 or abs(d2) > mp.mpf(2)**-150:
                bad += 1
                print("MISMATCH", row, r, to_fraction(shifted_half(s1)), to_fraction(shifted_half(s2.real)))
        print(f"{len(rows) - bad}/{len(rows)} rows reproduced")
        return 1 if bad else 0
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
