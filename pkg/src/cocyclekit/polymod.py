"""Homogeneous polynomial modules W_m, W_{n-1,n-1} and exact calculus on them.

``HomPoly`` of degree m stores the coefficient of T1^k T2^(m-k) at index k.
``HomPoly4`` of bidegree (p, p) stores the coefficient of
T1^i T2^(p-i) T3^j T4^(p-j) at [i][j].
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, List, Sequence, Tuple, TypeVar

from .arith import SqrtSum, det_power
from .gl2 import Mat2

__all__ = [
    "HomPoly",
    "HomPoly4",
    "gl_act",
    "gl_act4",
    "poly_integrate",
    "linear_power_in_t",
    "substitution_matrix",
    "F_coefficients",
    "F_check",
]

_ZERO = SqrtSum()


def _s(x) -> SqrtSum:
    return x if isinstance(x, SqrtSum) else SqrtSum.of(x)


class HomPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        if not coeffs:
            raise ValueError("a homogeneous polynomial needs at least one coefficient")
        self.coeffs: Tuple[SqrtSum, ...] = tuple(_s(c) for c in coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, m: int) -> "HomPoly":
        return cls([_ZERO] * (m + 1))

    @classmethod
    def scalar(cls, c) -> "HomPoly":
        return cls([c])

    @classmethod
    def linear(cls, t1, t2) -> "HomPoly":
        """t1*T1 + t2*T2."""
        return cls([t2, t1])

    @classmethod
    def monomial(cls, m: int, k: int, c=1) -> "HomPoly":
        cs = [_ZERO] * (m + 1)
        cs[k] = _s(c)
        return cls(cs)

    def _same(self, o: "HomPoly") -> None:
        if o.degree != self.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {o.degree}")

    def __add__(self, o: "HomPoly") -> "HomPoly":
        self._same(o)
        return HomPoly([a + b for a, b in zip(self.coeffs, o.coeffs)])

    def __sub__(self, o: "HomPoly") -> "HomPoly":
        self._same(o)
        return HomPoly([a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __neg__(self) -> "HomPoly":
        return HomPoly([-a for a in self.coeffs])

    def __mul__(self, o):
        if isinstance(o, HomPoly):
            out = [_ZERO] * (self.degree + o.degree + 1)
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j, b in enumerate(o.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
            return HomPoly(out)
        if isinstance(o, (int, Fraction, SqrtSum)):
            return HomPoly([a * o for a in self.coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "HomPoly":
        out = HomPoly.scalar(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, o):
        if isinstance(o, HomPoly):
            return self.coeffs == o.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.coeffs)

    def evaluate(self, t1: complex, t2: complex) -> complex:
        m = self.degree
        return sum(float(c) * t1 ** k * t2 ** (m - k) for k, c in enumerate(self.coeffs))

    def to_json(self) -> list:
        return [_coeff_json(c) for c in self.coeffs]

    def __repr__(self):
        terms = []
        m = self.degree
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"({c})*T1^{k}*T2^{m - k}")
        return " + ".join(terms) if terms else "0"


def _coeff_json(c: SqrtSum):
    if c.is_rational():
        q = c.rational()
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
    return c.to_json()


@lru_cache(maxsize=4096)
def substitution_matrix(a: Fraction, b: Fraction, c: Fraction, d: Fraction, m: int) -> Tuple[Tuple[Fraction, ...], ...]:
    """S with (P(aT1+cT2, bT1+dT2))_i = sum_k S[i][k] P_k in degree m."""
    def lin_pow(u, v, n):
        # (u*T1 + v*T2)^n as coefficient list indexed by T1-degree
        return [comb(n, i) * u ** i * v ** (n - i) for i in range(n + 1)]

    cols = []
    for k in range(m + 1):
        p1 = lin_pow(a, c, k)
        p2 = lin_pow(b, d, m - k)
        col = [Fraction(0)] * (m + 1)
        for i, x in enumerate(p1):
            if x:
                for j, y in enumerate(p2):
                    if y:
                        col[i + j] += x * y
        cols.append(col)
    return tuple(tuple(cols[k][i] for k in range(m + 1)) for i in range(m + 1))


def _apply(S, coeffs: Sequence[SqrtSum]) -> List[SqrtSum]:
    out = []
    for row in S:
        acc = _ZERO
        for s, p in zip(row, coeffs):
            if s and p:
                acc = acc + p * s
        out.append(acc)
    return out


def gl_act(g: Mat2, P: HomPoly) -> HomPoly:
    """(g.P)(T1, T2) = det(g)^(-m/2) P(aT1 + cT2, bT1 + dT2)."""
    if g.det <= 0:
        raise ValueError("W_m action needs det > 0")
    m = P.degree
    S = substitution_matrix(g.a, g.b, g.c, g.d, m)
    scale = det_power(g.det, -m)
    return HomPoly([x * scale for x in _apply(S, P.coeffs)])


class HomPoly4:
    """Element of W_{p,p}: polynomial in T1..T4 of bidegree (p, p)."""

    __slots__ = ("grid",)

    def __init__(self, grid: Sequence[Sequence]):
        rows = tuple(tuple(_s(c) for c in row) for row in grid)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise ValueError("coefficient grid must be square")
        self.grid: Tuple[Tuple[SqrtSum, ...], ...] = rows

    @property
    def p(self) -> int:
        return len(self.grid) - 1

    @classmethod
    def zero(cls, p: int) -> "HomPoly4":
        return cls([[_ZERO] * (p + 1) for _ in range(p + 1)])

    @classmethod
    def tensor(cls, P: HomPoly, Q: HomPoly) -> "HomPoly4":
        if P.degree != Q.degree:
            raise ValueError("tensor factors must share a degree")
        return cls([[a * b for b in Q.coeffs] for a in P.coeffs])

    def __add__(self, o: "HomPoly4") -> "HomPoly4":
        return HomPoly4([[x + y for x, y in zip(r, s)] for r, s in zip(self.grid, o.grid)])

    def __sub__(self, o: "HomPoly4") -> "HomPoly4":
        return HomPoly4([[x - y for x, y in zip(r, s)] for r, s in zip(self.grid, o.grid)])

    def __neg__(self):
        return HomPoly4([[-x for x in r] for r in self.grid])

    def __mul__(self, k):
        if isinstance(k, (int, Fraction, SqrtSum)):
            return HomPoly4([[x * k for x in r] for r in self.grid])
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, o):
        if isinstance(o, HomPoly4):
            return self.grid == o.grid
        return NotImplemented

    def __hash__(self):
        return hash(self.grid)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.grid)

    def is_symmetric(self) -> bool:
        """Invariant under (T1, T2) <-> (T3, T4)."""
        n = len(self.grid)
        return all(self.grid[i][j] == self.grid[j][i] for i in range(n) for j in range(i + 1, n))

    def is_rational(self) -> bool:
        return all(c.is_rational() for r in self.grid for c in r)

    def to_json(self) -> list:
        return [[_coeff_json(c) for c in r] for r in self.grid]

    def __repr__(self):
        return f"HomPoly4({self.to_json()})"


def gl_act4(g: Mat2, P: HomPoly4) -> HomPoly4:
    """Tensor-square action; total scalar det(g)^-(p)."""
    if g.det <= 0:
        raise ValueError("W_{p,p} action needs det > 0")
    p = P.p
    S = substitution_matrix(g.a, g.b, g.c, g.d, p)
    # act on the first index, then on the second
    cols = list(zip(*P.grid))
    half = [_apply(S, col) for col in cols]          # half[j][i]
    rows = [_apply(S, [half[j][i] for j in range(p + 1)]) for i in range(p + 1)]
    scale = det_power(g.det, -2 * p)
    return HomPoly4([[x * scale for x in r] for r in rows])


T = TypeVar("T")


def linear_power_in_t(A: HomPoly, B: HomPoly, n: int) -> List[HomPoly]:
    """t-coefficients of (t*A + B)^n: entry j is C(n, j) A^j B^(n-j)."""
    Apows = [HomPoly.scalar(1)]
    Bpows = [HomPoly.scalar(1)]
    for _ in range(n):
        Apows.append(Apows[-1] * A)
        Bpows.append(Bpows[-1] * B)
    return [Apows[j] * Bpows[n - j] * comb(n, j) for j in range(n + 1)]


def t_poly_mul(P: Sequence[T], Q: Sequence[T], mul: Callable[[T, T], T]) -> List[T]:
    out: List = [None] * (len(P) + len(Q) - 1)
    for i, a in enumerate(P):
        for j, b in enumerate(Q):
            v = mul(a, b)
            out[i + j] = v if out[i + j] is None else out[i + j] + v
    return out


def poly_integrate(coeffs: Sequence[T], lo, hi) -> T:
    """Integrate sum_j coeffs[j] t^j from lo to hi exactly."""
    lo, hi = Fraction(lo), Fraction(hi)
    total = None
    for j, P in enumerate(coeffs):
        w = (hi ** (j + 1) - lo ** (j + 1)) / (j + 1)
        term = P * w
        total = term if total is None else total + term
    return total


def F_coefficients(m: int) -> List[HomPoly]:
    """z-coefficients of F_m(z) = (z T1 + T2)^m."""
    return linear_power_in_t(HomPoly.linear(1, 0), HomPoly.linear(0, 1), m)


def F_check(m: int, z0) -> HomPoly:
    """int_0^{z0} (t T1 + T2)^m dt for rational z0."""
    return poly_integrate(F_coefficients(m), 0, z0)
