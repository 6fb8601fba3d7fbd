"""Exact scalars: rationals, sums of square roots, Bernoulli machinery.

Rationals are plain :class:`fractions.Fraction` values; ``Rat`` is an alias
kept so signatures read the way the rest of the package talks about them.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from math import comb, floor, gcd, isqrt
from typing import Dict, Iterable, Mapping, Union

Rat = Fraction
Scalar = Union[int, Fraction, "SqrtSum"]

__all__ = [
    "Rat",
    "SqrtSum",
    "as_rat",
    "squarefree_decompose",
    "bernoulli_number",
    "bernoulli_poly",
    "periodic_bernoulli",
    "frac_part",
]


def as_rat(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s:
            raise ValueError("empty rational")
        # Fraction accepts decimals and exponents; we only want p or p/q
        body = s.lstrip("+-")
        num, _, den = body.partition("/")
        if not num.isdigit() or (den and not den.isdigit()):
            raise ValueError(f"malformed rational {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def frac_part(x: Fraction) -> Fraction:
    return x - floor(x)


# ---------------------------------------------------------------------------
# square roots

def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return ``(s, r)`` with ``n == s*s*r`` and ``r`` squarefree (n > 0)."""
    if n <= 0:
        raise ValueError("squarefree_decompose needs a positive integer")
    s, r = 1, 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                r *= p
        p += 1 if p == 2 else 2
    r *= n
    return s, r


class SqrtSum:
    """Finite sum ``sum_r c_r * sqrt(r)`` over squarefree ``r`` with rational ``c_r``.

    Immutable. Key 1 holds the rational part. Zero coefficients are never
    stored, so equality is plain dictionary equality.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Fraction] | None = None):
        clean: Dict[int, Fraction] = {}
        if terms:
            for r, c in terms.items():
                if c:
                    clean[r] = Fraction(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[int, Fraction]) -> "SqrtSum":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def of(cls, x) -> "SqrtSum":
        if isinstance(x, SqrtSum):
            return x
        x = Fraction(x)
        return cls._raw({1: x} if x else {})

    @classmethod
    def sqrt(cls, q) -> "SqrtSum":
        """Exact square root of a non-negative rational."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("square root of a negative rational")
        if q == 0:
            return cls._raw({})
        # sqrt(n/d) = sqrt(n*d)/d
        s, r = squarefree_decompose(q.numerator * q.denominator)
        return cls._raw({r: Fraction(s, q.denominator)})

    @property
    def terms(self) -> Dict[int, Fraction]:
        return dict(self._terms)

    def is_rational(self) -> bool:
        return all(r == 1 for r in self._terms)

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self._terms.get(1, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __float__(self) -> float:
        return float(sum(float(c) * (r ** 0.5) for r, c in self._terms.items()))

    def __add__(self, other):
        if not isinstance(other, SqrtSum):
            if isinstance(other, (int, Fraction)):
                if not other:
                    return self
                out = dict(self._terms)
                v = out.get(1, 0) + other
                if v:
                    out[1] = v
                else:
                    out.pop(1, None)
                return SqrtSum._raw(out)
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for r, c in other._terms.items():
            v = out.get(r, 0) + c
            if v:
                out[r] = v
            else:
                out.pop(r, None)
        return SqrtSum._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return SqrtSum._raw({r: -c for r, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        if isinstance(other, SqrtSum):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return SqrtSum._raw({})
            return SqrtSum._raw({r: c * other for r, c in self._terms.items()})
        if not isinstance(other, SqrtSum):
            return NotImplemented
        out: Dict[int, Fraction] = {}
        for r1, c1 in self._terms.items():
            for r2, c2 in other._terms.items():
                if r1 == 1:
                    r, k = r2, 1
                elif r2 == 1:
                    r, k = r1, 1
                else:
                    g = gcd(r1, r2)
                    r, k = (r1 // g) * (r2 // g), g
                v = out.get(r, 0) + c1 * c2 * k
                if v:
                    out[r] = v
                else:
                    out.pop(r, None)
        return SqrtSum._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, SqrtSum):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self._terms.get(1, 0) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def to_json(self) -> Dict[str, str]:
        return {str(r): _ratstr(c) for r, c in sorted(self._terms.items())}

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for r, c in sorted(self._terms.items()):
            parts.append(_ratstr(c) if r == 1 else f"{_ratstr(c)}*sqrt({r})")
        return " + ".join(parts)


def _ratstr(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}" if c.denominator != 1 else str(c.numerator)


def det_power(det: Fraction, half_exponent: int) -> SqrtSum:
    """``det ** (half_exponent / 2)`` exactly, for a positive rational det."""
    det = Fraction(det)
    if det <= 0:
        raise ValueError("determinant must be positive")
    k, odd = divmod(half_exponent, 2)
    base = SqrtSum.of(det ** k)
    if odd:
        base = base * SqrtSum.sqrt(det)
    return base


# ---------------------------------------------------------------------------
# Bernoulli numbers and polynomials

_bern_lock = threading.Lock()
_bern_cache: list[Fraction] = [Fraction(1)]


def bernoulli_number(j: int) -> Fraction:
    """B_j with B_1 = -1/2."""
    if j < 0:
        raise ValueError("Bernoulli index must be non-negative")
    if j < len(_bern_cache):
        return _bern_cache[j]
    with _bern_lock:
        while len(_bern_cache) <= j:
            n = len(_bern_cache)
            # sum_{k<=n} C(n+1, k) B_k = 0
            s = sum(comb(n + 1, k) * _bern_cache[k] for k in range(n))
            _bern_cache.append(-s / (n + 1))
    return _bern_cache[j]


def bernoulli_poly(j: int, x) -> Fraction:
    if j < 0:
        raise ValueError("Bernoulli index must be non-negative")
    x = Fraction(x)
    # Horner over sum_k C(j,k) B_k x^(j-k), highest power of x first
    acc = Fraction(0)
    for k in range(j + 1):
        acc = acc * x + comb(j, k) * bernoulli_number(k)
    return acc


def periodic_bernoulli(j: int, x, *, symmetric: bool = False) -> Fraction:
    """B_j(x - floor(x)); at integers B_1 gives -1/2.

    With ``symmetric=True``, B_1 at integers is 0 instead, the midpoint of its
    one-sided limits, which makes B_1 odd. Every other (j, x) is unaffected.
    """
    if j < 1:
        raise ValueError("periodic Bernoulli index must be >= 1")
    x = Fraction(x)
    if symmetric and j == 1 and x.denominator == 1:
        return Fraction(0)
    return bernoulli_poly(j, x - floor(x))


def sum_rat(values: Iterable[Fraction]) -> Fraction:
    return sum(values, Fraction(0))
