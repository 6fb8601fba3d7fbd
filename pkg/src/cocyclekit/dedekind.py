"""Dedekind sums and generalized higher Rademacher-Dedekind sums."""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict

import numpy as np

from .arith import periodic_bernoulli
from .gl2 import TorsionPoint

__all__ = [
    "dedekind_sum",
    "dedekind_sum_fast",
    "dedekind_sums_naive_table",
    "dedekind_sum_reciprocity",
    "dedekind_sum_naive_blocked",
    "grd_sum",
    "b1",
]


def b1(x: Fraction) -> Fraction:
    """First periodic Bernoulli function, with value -1/2 at integers."""
    return x - (x.numerator // x.denominator) - Fraction(1, 2)


def _check(m: int, n: int) -> None:
    if n < 1:
        raise ValueError(f"Dedekind sum needs n >= 1, got {n}")
    if gcd(m, n) != 1:
        raise ValueError(f"Dedekind sum needs coprime arguments, got ({m}, {n})")


def dedekind_sum(m: int, n: int) -> Fraction:
    """s(m/n) by the defining O(n) sum."""
    _check(m, n)
    # for 0 < j < n: B1(j/n) = (2j - n)/(2n), and mj is never divisible by n
    total = 0
    for j in range(1, n):
        total += (2 * j - n) * (2 * (m * j % n) - n)
    return Fraction(total, 4 * n * n)


def dedekind_sum_fast(m: int, n: int) -> Fraction:
    """s(m/n) in O(log n) integer operations.

    With h = m mod n and h/n = [0; a_1, ..., a_r] from the Euclidean
    algorithm, 12 s(h/n) = sum (-1)^(i+1) a_i + (h + h')/n - (3 if r odd
    else 1), where h h' = 1 (mod n). Only the final division leaves the
    integers.
    """
    _check(m, n)
    h = m % n
    if h == 0:
        return Fraction(0)
    alt, sgn, steps = 0, 1, 0
    r0, r1 = n, h
    while r1:
        q, r = divmod(r0, r1)
        alt += sgn * q
        sgn = -sgn
        r0, r1 = r1, r
        steps += 1
    h_inv = pow(h, -1, n)
    return Fraction(alt * n + h + h_inv - (3 * n if steps & 1 else n), 12 * n)


def dedekind_sum_reciprocity(m: int, n: int) -> Fraction:
    """s(m/n) by repeated reciprocity in Fraction arithmetic.

    An independent O(log n) route used as an oracle for large n, where the
    defining sum is out of reach:
    s(h/k) + s(k/h) = -1/4 + (h/k + k/h + 1/(hk))/12, and s(h/k) = s((h mod k)/k).
    """
    _check(m, n)
    total = Fraction(0)
    sgn = 1
    h, k = m % n, n
    while h:
        total += sgn * (Fraction(-1, 4) + (Fraction(h, k) + Fraction(k, h) + Fraction(1, h * k)) / 12)
        sgn = -sgn
        h, k = k % h, h
    return total


def dedekind_sum_naive_blocked(m: int, n: int, block: int = 1 << 17) -> Fraction:
    """The defining sum, vectorized in exact int64 blocks (n < 2**31).

    sum (2j - n)(2r_j - n) with r_j = mj mod n expands to
    4 sum j r_j - 2n sum r_j - 2n sum j + n^2 (n - 1); each block sum of
    j*r_j is split as r_j = r1 * 2^15 + r0 so that no int64 overflows.
    """
    _check(m, n)
    if n >= 1 << 31:
        raise ValueError("blocked naive sum supports n < 2**31")
    mm = m % n
    sum_jr = 0
    sum_r = 0
    for lo in range(1, n, block):
        j = np.arange(lo, min(n, lo + block), dtype=np.int64)
        # mm * j can reach 2**62; still inside int64
        r = (mm * j) % n
        r1, r0 = r >> 15, r & 0x7FFF
        sum_jr += (int((j * r1).sum()) << 15) + int((j * r0).sum())
        sum_r += int(r.sum())
    sum_j = n * (n - 1) // 2
    total = 4 * sum_jr - 2 * n * sum_r - 2 * n * sum_j + n * n * (n - 1)
    return Fraction(total, 4 * n * n)


def dedekind_sums_naive_table(n: int) -> Dict[int, Fraction]:
    """Defining sum for every 0 <= m < n coprime to n at once (vectorized)."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return {0: Fraction(0)}
    ms = np.array([m for m in range(n) if gcd(m, n) == 1], dtype=np.int64)
    js = np.arange(1, n, dtype=np.int64)
    left = 2 * js - n
    out: Dict[int, Fraction] = {}
    # chunk rows to bound memory at large n
    step = max(1, 2_000_000 // n)
    for lo in range(0, len(ms), step):
        block = ms[lo:lo + step]
        right = 2 * (np.outer(block, js) % n) - n
        totals = right @ left
        for m, t in zip(block.tolist(), totals.tolist()):
            out[m] = Fraction(t, 4 * n * n)
    return out


def grd_sum(p: int, q: int, x: TorsionPoint, a: int, c: int, *, symmetric: bool = False) -> Fraction:
    """S^{(p,q)}_x(a/c) = sum_{r<c} B_p((x1+r)/c)/p * B_q(x2 + a(x1+r)/c)/q.

    ``symmetric`` selects the B_1(integer) = 0 convention (see
    :func:`periodic_bernoulli`); the default uses -1/2.
    """
    if c < 1:
        raise ValueError("generalized Dedekind sum needs c >= 1")
    if p < 1 or q < 1:
        raise ValueError("Bernoulli orders must be positive")
    if gcd(a, c) != 1:
        raise ValueError(f"generalized Dedekind sum needs coprime (a, c), got ({a}, {c})")
    total = Fraction(0)
    for r in range(c):
        t = (x.x1 + r) / c
        total += (periodic_bernoulli(p, t, symmetric=symmetric)
                  * periodic_bernoulli(q, x.x2 + a * t, symmetric=symmetric))
    return total / (p * q)
