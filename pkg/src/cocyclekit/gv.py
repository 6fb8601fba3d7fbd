"""The Petersson-Asai cocycle e, the rational Godbillon-Vey cocycle Re GV~,
and the transgression identity linking them to Phi~.

``re_gv_tilde`` runs in O(log) arithmetic operations by reducing every
fiber sum to a lattice computation; ``re_gv_tilde_naive`` enumerates the
fibers point by point and serves as its oracle.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .arith import periodic_bernoulli
from .dedekind import b1, dedekind_sum_fast
from .gl2 import (
    Mat2,
    ZERO_POINT,
    check_matrix,
    fiber,
    kernel_lattice_hnf,
    primitive_rep,
)
from .rademacher import rademacher_phi_tilde

__all__ = [
    "asai_e",
    "asai_x",
    "re_gv_tilde",
    "re_gv_tilde_naive",
    "re_gv_borel",
    "transgression_defect",
    "coboundary_phi_tilde",
]


def _require_sl2(g: Mat2, what: str) -> None:
    if g.det != 1:
        raise ValueError(f"{what} needs determinant 1, got {g.det}")


def asai_x(g: Mat2) -> Fraction:
    """x(g) = c when c != 0 (negative c kept as is), otherwise d."""
    return g.c if g.c != 0 else g.d


def _hilbert(x1, x2) -> int:
    return 1 if (x1 < 0 and x2 < 0) else 0


def asai_e(g1: Mat2, g2: Mat2) -> int:
    _require_sl2(g1, "asai_e")
    _require_sl2(g2, "asai_e")
    x1, x2 = asai_x(g1), asai_x(g2)
    return -_hilbert(x1, x2) + _hilbert(-x1 * x2, asai_x(g1 @ g2))


# ---------------------------------------------------------------------------
# fast lattice route

def _sum_b2_kernel(M: Mat2) -> Fraction:
    """Sum of B2(x1) over all x in (Q/Z)^2 with x*M = 0, origin included.

    The kernel is Z^2 M^-1 / Z^2, of order det M; its first coordinates fill
    (1/e)Z/Z evenly, e being the common denominator of the first column of
    M^-1, and sum_{k<e} B2(k/e) = 1/(6e).
    """
    D = M.det
    e = lcm((M.d / D).denominator, (M.c / D).denominator)
    return D / (6 * e * e)


def _double_b1_sum(M1: Mat2, ap: int, cp: int) -> Fraction:
    """sum over x with x*M1 = 0 (origin included), j < cp, of
    B1((x1+j)/cp) * B1(ap*(x1+j)/cp + x2).

    The pairs ((x1+j)/cp, ap(x1+j)/cp + x2) run once over Lambda/Z^2 with
    Lambda = Z^2 M1^-1 N, N = [[1/cp, ap/cp], [0, 1]]. In Hermite form
    Lambda = Z(1/e, s) + Z(0, 1/f); summing over the second generator
    collapses B1 by its distribution law, leaving a classical Dedekind sum.
    """
    inv = M1.inverse()
    N = Mat2(Fraction(1, cp), Fraction(ap, cp), 0, 1)
    L = inv @ N
    p, s, r = kernel_lattice_hnf(((L.a, L.b), (L.c, L.d)))
    e = p.denominator   # p == 1/e because Z^2 is inside Lambda
    f = r.denominator
    h = int(e * f * s)
    g = gcd(h, e)
    return Fraction(1, 4) + dedekind_sum_fast(h // g, e // g)


def re_gv_tilde(g1: Mat2, g2: Mat2) -> Fraction:
    """Rational real part of the regularized Godbillon-Vey cocycle."""
    p1, p2 = primitive_rep(g1), primitive_rep(g2)
    C1 = check_matrix(p1)
    k1 = _sum_b2_kernel(C1) - Fraction(1, 6)
    a2, b2, c2, d2 = (int(v) for v in p2.entries())
    if c2 == 0:
        return Fraction(b2, d2) * k1
    C2 = check_matrix(p2)
    # x with x*C2*C1 = 0 but x*C2 != 0
    middle = _sum_b2_kernel(C2 @ C1) - _sum_b2_kernel(C2)
    g = gcd(a2, c2)
    ap, cp = a2 // g, c2 // g
    double = _double_b1_sum(C1, ap, cp) - Fraction(1, 4) - dedekind_sum_fast(ap, cp)
    return Fraction(a2, c2) * k1 + Fraction(d2, c2) * middle - 2 * double


# ---------------------------------------------------------------------------
# enumeration route (oracle)

def re_gv_tilde_naive(g1: Mat2, g2: Mat2) -> Fraction:
    """Same value as :func:`re_gv_tilde`, by listing every fiber point."""
    p1, p2 = primitive_rep(g1), primitive_rep(g2)
    C1 = check_matrix(p1)
    K1 = [x for x in fiber(C1, ZERO_POINT) if not x.is_zero()]
    k1 = sum((periodic_bernoulli(2, x.x1) for x in K1), Fraction(0))
    a2, b2, c2, d2 = (int(v) for v in p2.entries())
    if c2 == 0:
        return Fraction(b2, d2) * k1
    C2 = check_matrix(p2)
    middle = Fraction(0)
    for x in fiber(C2 @ C1, ZERO_POINT):
        if not (x * C2).is_zero():
            middle += periodic_bernoulli(2, x.x1)
    g = gcd(a2, c2)
    ap, cp = a2 // g, c2 // g
    double = Fraction(0)
    for x in K1:
        for j in range(cp):
            t = (x.x1 + j) / cp
            double += b1(t) * b1(ap * t + x.x2)
    return Fraction(a2, c2) * k1 + Fraction(d2, c2) * middle - 2 * double


def re_gv_borel(beta1: Mat2, beta2: Mat2) -> Fraction:
    """Closed form (1/6)(b2/d2)(a1/d1 - 1) on pairs from B1+."""
    for beta in (beta1, beta2):
        if beta.c != 0 or beta.a <= 0 or beta.det != 1:
            raise ValueError(f"expected a matrix [[a, b], [0, 1/a]] with a > 0, got {beta}")
    return Fraction(1, 6) * (beta2.b / beta2.d) * (beta1.a / beta1.d - 1)


def coboundary_phi_tilde(g1: Mat2, g2: Mat2) -> Fraction:
    return rademacher_phi_tilde(g1 @ g2) - rademacher_phi_tilde(g1) - rademacher_phi_tilde(g2)


def transgression_defect(g1: Mat2, g2: Mat2, *, naive: bool = False) -> Fraction:
    """1/2 Re GV~ + e - (Phi~(g1 g2) - Phi~(g1) - Phi~(g2)); zero in theory."""
    _require_sl2(g1, "transgression_defect")
    _require_sl2(g2, "transgression_defect")
    gv = (re_gv_tilde_naive if naive else re_gv_tilde)(g1, g2)
    return gv / 2 + asai_e(g1, g2) - coboundary_phi_tilde(g1, g2)
