"""2x2 rational matrices, factorizations and the torsion-point action.

Row-vector convention throughout: a torsion point ``x = (x1, x2)`` is acted
on by right multiplication, ``x * M``.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd
from typing import Dict, Iterator, Mapping, Tuple

from .arith import as_rat

__all__ = [
    "Mat2",
    "TorsionPoint",
    "TorsionSum",
    "IDENTITY",
    "SIGMA0",
    "parse_matrix",
    "parse_point",
    "check_matrix",
    "primitive_rep",
    "integral_rep",
    "sl2z_factor",
    "bruhat_factor",
    "smith_normal_form",
    "fiber",
    "fiber_bruteforce",
    "pipe_action",
    "egcd",
    "kernel_lattice_hnf",
]


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@dataclass(frozen=True)
class Mat2:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __init__(self, a, b, c, d):
        object.__setattr__(self, "a", as_rat(a))
        object.__setattr__(self, "b", as_rat(b))
        object.__setattr__(self, "c", as_rat(c))
        object.__setattr__(self, "d", as_rat(d))

    @classmethod
    def of(cls, rows) -> "Mat2":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @property
    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def rows(self) -> Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]:
        return ((self.a, self.b), (self.c, self.d))

    def entries(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def scale(self, k) -> "Mat2":
        k = as_rat(k)
        return Mat2(k * self.a, k * self.b, k * self.c, k * self.d)

    def inverse(self) -> "Mat2":
        D = self.det
        if D == 0:
            raise ZeroDivisionError("singular matrix")
        return Mat2(self.d / D, -self.b / D, -self.c / D, self.a / D)

    def is_integral(self) -> bool:
        return all(e.denominator == 1 for e in self.entries())

    def is_upper(self) -> bool:
        return self.c == 0

    def moebius(self, z: complex) -> complex:
        a, b, c, d = (float(e) for e in self.entries())
        return (a * z + b) / (c * z + d)

    def __str__(self) -> str:
        return "{} {}; {} {}".format(*(_fmt(e) for e in self.entries()))

    def to_json(self) -> list:
        return [[_fmt(self.a), _fmt(self.b)], [_fmt(self.c), _fmt(self.d)]]


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


IDENTITY = Mat2(1, 0, 0, 1)
SIGMA0 = Mat2(0, -1, 1, 0)


def parse_matrix(text: str) -> Mat2:
    """Parse ``"a b; c d"`` with entries written as ``p`` or ``p/q``."""
    rows = [r.split() for r in text.strip().split(";")]
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise ValueError(f"matrix must look like 'a b; c d', got {text!r}")
    return Mat2(*(as_rat(e) for r in rows for e in r))


def parse_point(text: str) -> "TorsionPoint":
    parts = [p for p in re.split(r"[,\s]+", text.strip()) if p]
    if len(parts) != 2:
        raise ValueError(f"torsion point must look like 'p/q,r/s', got {text!r}")
    return TorsionPoint(as_rat(parts[0]), as_rat(parts[1]))


# ---------------------------------------------------------------------------
# torsion points

@dataclass(frozen=True, order=True)
class TorsionPoint:
    """Element of (Q/Z)^2, stored with both coordinates in [0, 1)."""

    x1: Fraction
    x2: Fraction

    def __init__(self, x1, x2):
        x1, x2 = as_rat(x1), as_rat(x2)
        object.__setattr__(self, "x1", x1 - floor(x1))
        object.__setattr__(self, "x2", x2 - floor(x2))

    def __mul__(self, M: Mat2) -> "TorsionPoint":
        return TorsionPoint(self.x1 * M.a + self.x2 * M.c, self.x1 * M.b + self.x2 * M.d)

    def __add__(self, o: "TorsionPoint") -> "TorsionPoint":
        return TorsionPoint(self.x1 + o.x1, self.x2 + o.x2)

    def is_zero(self) -> bool:
        return self.x1 == 0 and self.x2 == 0

    def order(self) -> int:
        return _lcm(self.x1.denominator, self.x2.denominator)

    def __str__(self) -> str:
        return f"({_fmt(self.x1)},{_fmt(self.x2)})"


ZERO_POINT = TorsionPoint(0, 0)


class TorsionSum(Mapping[TorsionPoint, int]):
    """Formal Z-linear combination of torsion points."""

    __slots__ = ("_c",)

    def __init__(self, items=None):
        c: Counter = Counter()
        if items is not None:
            if isinstance(items, Mapping):
                for p, k in items.items():
                    c[p] += k
            else:
                for p in items:
                    c[p] += 1
        self._c = {p: k for p, k in c.items() if k}

    @classmethod
    def point(cls, x: TorsionPoint) -> "TorsionSum":
        return cls({x: 1})

    def __getitem__(self, p):
        return self._c[p]

    def __iter__(self) -> Iterator[TorsionPoint]:
        return iter(self._c)

    def __len__(self):
        return len(self._c)

    def __add__(self, o: "TorsionSum") -> "TorsionSum":
        out = Counter(self._c)
        for p, k in o.items():
            out[p] += k
        return TorsionSum(out)

    def __mul__(self, k: int) -> "TorsionSum":
        return TorsionSum({p: k * v for p, v in self._c.items()})

    __rmul__ = __mul__

    def __eq__(self, o):
        if isinstance(o, TorsionSum):
            return self._c == o._c
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def total(self) -> int:
        return sum(self._c.values())

    def __repr__(self):
        body = ", ".join(f"{k}*{p}" for p, k in sorted(self._c.items()))
        return f"TorsionSum({body})"


# ---------------------------------------------------------------------------
# canonical representatives and factorizations

def _require_integral(M: Mat2, what: str) -> Tuple[int, int, int, int]:
    if not M.is_integral():
        raise ValueError(f"{what} needs an integral matrix, got {M}")
    return tuple(int(e) for e in M.entries())  # type: ignore[return-value]


def check_matrix(M: Mat2) -> Mat2:
    """det(M) * M^-1 for integral M with positive determinant."""
    _require_integral(M, "check_matrix")
    if M.det <= 0:
        raise ValueError("check_matrix needs det > 0")
    return Mat2(M.d, -M.b, -M.c, M.a)


def integral_rep(M: Mat2) -> Mat2:
    """The integral, entry-primitive multiple of M by a *positive* rational.

    Unlike :func:`primitive_rep` the sign is kept, so -I stays -I.
    """
    if M.det <= 0:
        if all(e == 0 for e in M.entries()):
            raise ValueError("zero matrix has no primitive representative")
        raise ValueError(f"integral representative needs det > 0, got det {M.det}")
    L = 1
    for e in M.entries():
        L = _lcm(L, e.denominator)
    ints = [int(e * L) for e in M.entries()]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return Mat2(*(v // g for v in ints))


def primitive_rep(M: Mat2) -> Mat2:
    """The integral, entry-primitive multiple of M by a nonzero rational,
    normalized so that c > 0, or c == 0 and d > 0 (representative of the
    class of M in PGL+(2,Q))."""
    P = integral_rep(M)
    if P.c < 0 or (P.c == 0 and P.d < 0):
        return -P
    return P


def egcd(a: int, b: int) -> Tuple[int, int, int]:
    """(g, u, v) with u*a + v*b = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def sl2z_factor(M: Mat2) -> Tuple[Mat2, Mat2]:
    """Write M = sigma @ beta with sigma in SL(2,Z), beta upper triangular.

    Upper triangular input is returned as (I, M). Otherwise the first column
    of sigma is the primitive integer vector positively proportional to M's
    first column, so beta has a positive upper-left entry; the second column
    comes straight from the extended Euclidean algorithm.
    """
    if M.det <= 0:
        raise ValueError("sl2z_factor needs det > 0")
    if M.c == 0:
        return IDENTITY, M
    L = _lcm(M.a.denominator, M.c.denominator)
    p, q = int(M.a * L), int(M.c * L)
    g = gcd(p, q)
    p, q = p // g, q // g
    _, u, v = egcd(p, q)
    sigma = Mat2(p, -v, q, u)
    beta = Mat2(u, v, -q, p) @ M
    assert beta.c == 0
    return sigma, beta


def bruhat_factor(M: Mat2) -> Mat2 | Tuple[Mat2, Mat2, Mat2]:
    """Bruhat cell decomposition.

    Returns M itself when it is upper triangular, else ``(b1, SIGMA0, b2)``
    with ``M == b1 @ SIGMA0 @ b2`` and

        b1 = [[det/|c|, a/c], [0, 1]],   b2 = [[c, d], [0, sign(c)]].

    Both b1 and b2 have positive determinant.
    """
    D = M.det
    if D <= 0:
        raise ValueError("bruhat_factor needs det > 0")
    if M.c == 0:
        return M
    r = 1 if M.c > 0 else -1
    b1 = Mat2(D / abs(M.c), M.a / M.c, 0, 1)
    b2 = Mat2(M.c, M.d, 0, r)
    return b1, SIGMA0, b2


# ---------------------------------------------------------------------------
# solving y * M = x (mod 1)

def smith_normal_form(M: Mat2) -> Tuple[Tuple[int, int], Mat2, Mat2]:
    """Integral M -> ((d1, d2), U, V) with U @ M @ V = diag(d1, d2), U and V
    unimodular, d1 | d2 and d1 > 0."""
    A = [list(r) for r in (tuple(int(e) for e in row) for row in M.rows())]
    if A[0][0] * A[1][1] - A[0][1] * A[1][0] == 0:
        raise ValueError("singular matrix")
    U = [[1, 0], [0, 1]]
    V = [[1, 0], [0, 1]]

    def rowop(i, j, q):
        for k in range(2):
            A[i][k] -= q * A[j][k]
            U[i][k] -= q * U[j][k]

    def colop(i, j, q):
        for k in range(2):
            A[k][i] -= q * A[k][j]
            V[k][i] -= q * V[k][j]

    while True:
        _, i, j = min((abs(A[i][j]), i, j) for i in range(2) for j in range(2) if A[i][j])
        if i:
            A[0], A[1] = A[1], A[0]
            U[0], U[1] = U[1], U[0]
        if j:
            for R in (A, V):
                for row in R:
                    row[0], row[1] = row[1], row[0]
        p = A[0][0]
        rowop(1, 0, A[1][0] // p)
        if A[1][0]:
            continue
        colop(1, 0, A[0][1] // p)
        if A[0][1]:
            continue
        if A[1][1] % p:
            rowop(0, 1, -1)
            continue
        break
    if A[0][0] < 0:
        A[0][0] = -A[0][0]
        U[0] = [-e for e in U[0]]
    if A[1][1] < 0:
        A[1][1] = -A[1][1]
        U[1] = [-e for e in U[1]]
    return (A[0][0], A[1][1]), Mat2.of(U), Mat2.of(V)


def fiber(M: Mat2, x: TorsionPoint) -> TorsionSum:
    """All y in (Q/Z)^2 with y * M == x (mod Z^2); there are det(M) of them."""
    if M.det <= 0:
        raise ValueError("fiber needs det > 0")
    (d1, d2), U, V = smith_normal_form(M)
    # y M = x  <=>  (y U^-1) diag(d1, d2) = x V  (mod 1)
    xv = (x.x1 * V.a + x.x2 * V.c, x.x1 * V.b + x.x2 * V.d)
    out = []
    for k1 in range(d1):
        w1 = (xv[0] + k1) / d1
        for k2 in range(d2):
            w2 = (xv[1] + k2) / d2
            out.append(TorsionPoint(w1 * U.a + w2 * U.c, w1 * U.b + w2 * U.d))
    return TorsionSum(out)


def fiber_bruteforce(M: Mat2, x: TorsionPoint) -> TorsionSum:
    """Reference solver: scan the grid of denominator det(M)*order(x)."""
    D = int(M.det)
    n = D * x.order()
    sols = []
    for i in range(n):
        for j in range(n):
            y = TorsionPoint(Fraction(i, n), Fraction(j, n))
            if y * M == x:
                sols.append(y)
    return TorsionSum(sols)


def pipe_action(x: TorsionPoint | TorsionSum, g: Mat2) -> TorsionSum:
    """x | g: the formal sum of y with y * check(g~) == x.

    g~ is the sign-preserving integral multiple (:func:`integral_rep`), so for
    g in SL(2,Z) the result is the single point x * g and Gamma(N) fixes
    points of order dividing N; -I acts as x -> -x.
    """
    M = check_matrix(integral_rep(g))
    if isinstance(x, TorsionPoint):
        return fiber(M, x)
    out = TorsionSum()
    for p, k in x.items():
        out = out + fiber(M, p) * k
    return out


def kernel_lattice_hnf(basis: Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]):
    """Hermite form of the lattice spanned by two rational row vectors.

    Returns (p, q, r) with the lattice equal to Z(p, q) + Z(0, r), p, r > 0,
    0 <= q < r.
    """
    (u1, u2), (v1, v2) = basis
    L = 1
    for e in (u1, u2, v1, v2):
        L = _lcm(L, e.denominator)
    a, b, c, d = (int(e * L) for e in (u1, u2, v1, v2))
    g, s, t = egcd(a, c)
    if g == 0:
        raise ValueError("degenerate lattice")
    # new first row: s*(a,b) + t*(c,d) = (g, s*b + t*d)
    q = s * b + t * d
    r = abs(a * d - b * c) // g
    if r == 0:
        raise ValueError("degenerate lattice")
    q %= r
    return Fraction(g, L), Fraction(q, L), Fraction(r, L)
