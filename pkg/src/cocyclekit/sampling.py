"""Seeded random generators for matrices and torsion points.

Each verification sample gets its own ``random.Random`` keyed by
(suite, seed, index), so results do not depend on scheduling.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .gl2 import Mat2, TorsionPoint, egcd

__all__ = [
    "rng_for",
    "random_rational",
    "random_sl2q",
    "random_sl2z",
    "random_gl2q",
    "random_b1plus",
    "random_gamma_n",
    "random_point",
]


def rng_for(suite: str, seed: int, index: int) -> random.Random:
    return random.Random(f"{suite}/{seed}/{index}")


def random_rational(rng: random.Random, height: int) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def random_sl2q(rng: random.Random, height: int = 20, length: int = 8) -> Mat2:
    """Word of length 1..length in [[1,q],[0,1]] and [[1,0],[q,1]], q of height <= height."""
    M = Mat2(1, 0, 0, 1)
    for _ in range(rng.randint(1, length)):
        q = random_rational(rng, height)
        M = M @ (Mat2(1, q, 0, 1) if rng.random() < 0.5 else Mat2(1, 0, q, 1))
    return M


def random_sl2z(rng: random.Random, bound: int = 50, *, c_positive: bool = False) -> Mat2:
    """Element of SL(2,Z) with |a|, |c| <= bound; the completion (b, d) comes
    from the extended Euclidean algorithm, shifted by a random multiple of
    (a, c) when that keeps every entry within bound."""
    while True:
        a = rng.randint(-bound, bound)
        c = rng.randint(1, bound) if c_positive else rng.randint(-bound, bound)
        g, u, v = egcd(a, c)
        if g != 1:
            continue
        # a*u + c*v = 1  ->  [[a, -v], [c, u]]
        b, d = -v, u
        ks = [k for k in range(-bound, bound + 1)
              if abs(b + k * a) <= bound and abs(d + k * c) <= bound]
        if not ks:
            continue
        k = rng.choice(ks)
        return Mat2(a, b + k * a, c, d + k * c)


def random_b1plus(rng: random.Random, height: int = 12, *, min_ratio: Fraction | None = None) -> Mat2:
    """[[a, b], [0, 1/a]] with a > 0; optionally a/d = a^2 >= min_ratio."""
    while True:
        a = Fraction(rng.randint(1, height), rng.randint(1, height))
        if min_ratio is None or a * a >= min_ratio:
            return Mat2(a, random_rational(rng, height), 0, 1 / a)


def random_gl2q(rng: random.Random, height: int = 4, length: int = 3, dmax: int = 3) -> Mat2:
    """SL(2,Q) word times an upper-triangular integral matrix; determinants
    are frequently not squares."""
    M = random_sl2q(rng, height, length)
    B = Mat2(rng.randint(1, dmax), rng.randint(-dmax, dmax), 0, rng.randint(1, dmax))
    if rng.random() < 0.25:
        B = -B
    return M @ B


def random_gamma_n(rng: random.Random, N: int, height: int = 3, length: int = 4) -> Mat2:
    """Word in [[1, kN], [0, 1]] and [[1, 0], [kN, 1]], an element of Gamma(N)."""
    M = Mat2(1, 0, 0, 1)
    for _ in range(rng.randint(1, length)):
        k = N * rng.randint(-height, height)
        M = M @ (Mat2(1, k, 0, 1) if rng.random() < 0.5 else Mat2(1, 0, k, 1))
    return M


def random_point(rng: random.Random, max_den: int = 12, *, nonzero: bool = False) -> TorsionPoint:
    while True:
        N = rng.randint(1, max_den)
        x = TorsionPoint(Fraction(rng.randrange(N), N), Fraction(rng.randrange(N), N))
        if not (nonzero and x.is_zero()):
            return x
