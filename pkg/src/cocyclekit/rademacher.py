"""The Rademacher function on SL(2,Z) and its rational extension to GL+(2,Q)."""
from __future__ import annotations

from fractions import Fraction

from .dedekind import dedekind_sum_fast
from .gl2 import Mat2, sl2z_factor

__all__ = ["rademacher_phi", "rademacher_phi_tilde", "phi_tilde_sl2z", "phi_tilde_borel", "sign"]


def sign(x) -> int:
    return (x > 0) - (x < 0)


def _require_sl2z(s: Mat2) -> tuple[int, int, int, int]:
    if not s.is_integral():
        raise ValueError(f"expected an integral matrix, got {s}")
    if s.det != 1:
        raise ValueError(f"expected determinant 1, got {s.det}")
    return tuple(int(e) for e in s.entries())  # type: ignore[return-value]


def rademacher_phi(s: Mat2) -> Fraction:
    """Classical Rademacher Phi(s) for s in SL(2,Z); always an integer."""
    a, b, c, d = _require_sl2z(s)
    if c == 0:
        val = Fraction(b, d)
    else:
        val = Fraction(a + d, c) - 12 * sign(c) * dedekind_sum_fast(a, abs(c))
    if val.denominator != 1:
        raise ArithmeticError(f"Rademacher function not integral at {s}: {val}")
    return val


def phi_tilde_sl2z(s: Mat2) -> Fraction:
    a, b, c, d = _require_sl2z(s)
    if c == 0:
        return Fraction(b, 12 * d) + Fraction(1 - sign(d), 4)
    return Fraction(a + d, 12 * c) - sign(c) * (Fraction(1, 4) + dedekind_sum_fast(a, abs(c)))


def phi_tilde_borel(beta: Mat2) -> Fraction:
    if beta.c != 0:
        raise ValueError(f"expected an upper triangular matrix, got {beta}")
    if beta.det <= 0:
        raise ValueError("expected positive determinant")
    return beta.b / (12 * beta.d) + Fraction(1 - sign(beta.d), 4)


def rademacher_phi_tilde(g: Mat2) -> Fraction:
    """Phi~(g) = Phi~(sigma) + Phi~(beta) for g = sigma @ beta.

    The factorization is the one from :func:`sl2z_factor`, whose beta has a
    positive diagonal. Changing sigma by a translation [[1, n], [0, 1]]
    leaves the value unchanged; changing it by -I does not in general (the
    two answers differ by an integer).
    """
    if g.det <= 0:
        raise ValueError("Phi~ needs det > 0")
    sigma, beta = sl2z_factor(g)
    return phi_tilde_sl2z(sigma) + phi_tilde_borel(beta)
