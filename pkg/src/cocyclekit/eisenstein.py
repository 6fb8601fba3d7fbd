"""Higher-weight Eisenstein cocycles Phi^(m)_x with values in W_{m-2}
(and the symmetric-tensor variant with values in W_{n-1,n-1}, m = 2n).

Two independent routes are provided:

* closed forms -- on upper-triangular matrices, at sigma_0, and on
  SL(2,Z) with c > 0 (generalized Rademacher-Dedekind sums);
* the Bruhat chain -- generators only (Borel values and the sigma_0 value)
  glued together by the twisted cocycle relation

      Phi_x(alpha beta) = Phi_x(alpha) + alpha . Phi_{x|alpha}(beta).

The subscript twist x|alpha carries the weight det(alpha~)^((m-2)/2) on
top of the plain fiber sum (alpha~ the sign-preserving integral multiple); without
it the relation fails for m > 2. For odd m that weight is a square root,
so subscripts are kept as maps point -> SqrtSum.

Throughout this module B_1 takes the value 0 at integers (it is -1/2 in
the Dedekind-sum code). Only the odd choice makes the sigma_0 value
compatible with sigma_0^2 = -I, whose twist sends x to -x.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Dict, Mapping, Union

from .arith import SqrtSum, det_power, periodic_bernoulli
from .dedekind import grd_sum
from .gl2 import (
    Mat2,
    SIGMA0,
    TorsionPoint,
    TorsionSum,
    bruhat_factor,
    check_matrix,
    fiber,
    integral_rep,
)
from .polymod import (
    HomPoly,
    HomPoly4,
    gl_act,
    gl_act4,
    linear_power_in_t,
    poly_integrate,
    t_poly_mul,
)

__all__ = [
    "WeightOriginError",
    "a0_phi",
    "phi_on_borel",
    "phi_at_sigma0",
    "phi_closed",
    "phi_chain",
    "phi_sym_on_borel",
    "phi_sym_at_sigma0",
    "phi_sym_closed",
    "phi_sym",
    "twist_subscript",
    "cocycle_defect",
    "bruhat_factor_alt",
]

Subscript = Union[TorsionPoint, TorsionSum, Mapping[TorsionPoint, object]]
Weighted = Dict[TorsionPoint, SqrtSum]


class WeightOriginError(ValueError):
    """Raised when a weight-2 computation would need the point x = 0."""


def _check_weight(m: int, x: TorsionPoint) -> None:
    if m < 2:
        raise ValueError(f"weight must be >= 2, got {m}")
    if m == 2 and x.is_zero():
        raise WeightOriginError("Phi^(2) is undefined at the weight-2 origin x = 0")


@lru_cache(maxsize=1 << 16)
def _B(j: int, t) -> Fraction:
    # B_1(integer) = 0: with -1/2 the sigma_0 value is not compatible with
    # sigma_0^2 = -I, which sends x to -x (B_1 must be odd for that)
    return periodic_bernoulli(j, t, symmetric=True)


def _as_weighted(x: Subscript) -> Weighted:
    if isinstance(x, TorsionPoint):
        return {x: SqrtSum.of(1)}
    out: Weighted = {}
    for p, k in x.items():
        k = k if isinstance(k, SqrtSum) else SqrtSum.of(k)
        if k:
            out[p] = out.get(p, SqrtSum()) + k
    return {p: k for p, k in out.items() if k}


def twist_subscript(x: Subscript, alpha: Mat2, m: int) -> Weighted:
    """x|alpha = det(alpha~)^((m-2)/2) * sum_{y . check(alpha~) = x} y.

    alpha~ is the entry-primitive multiple of alpha by a positive rational.
    The sign is kept: check(-I) = -I sends x to -x, which matters for odd m.
    """
    P = integral_rep(alpha)
    M = check_matrix(P)
    w = det_power(P.det, m - 2)
    out: Weighted = {}
    for p, k in _as_weighted(x).items():
        kw = k * w
        for y in fiber(M, p):
            out[y] = out.get(y, SqrtSum()) + kw
    return {p: k for p, k in out.items() if k}


# ---------------------------------------------------------------------------
# closed forms, weight m, values in W_{m-2}

def a0_phi(m: int, x: TorsionPoint) -> Fraction:
    """Constant term -B_m(x1)/m."""
    _check_weight(m, x)
    return -_B(m, x.x1) / m


_T1 = HomPoly.linear(1, 0)
_T2 = HomPoly.linear(0, 1)


def _integral(deg: int, lo, hi, A: HomPoly = _T1, B: HomPoly = _T2) -> HomPoly:
    """int_lo^hi (t A + B)^deg dt."""
    return poly_integrate(linear_power_in_t(A, B, deg), lo, hi)


def phi_on_borel(m: int, x: TorsionPoint, beta: Mat2) -> HomPoly:
    _check_weight(m, x)
    if beta.c != 0 or beta.det <= 0:
        raise ValueError(f"expected an upper triangular matrix with det > 0, got {beta}")
    return _integral(m - 2, 0, beta.b / beta.d) * a0_phi(m, x)


def phi_at_sigma0(m: int, x: TorsionPoint) -> HomPoly:
    _check_weight(m, x)
    cs = []
    for k in range(m - 1):
        p, q = m - k - 1, k + 1
        cs.append((-1) ** k * comb(m - 2, k) * (_B(p, x.x1) / p) * (_B(q, x.x2) / q))
    return HomPoly(cs)


def _require_sl2z_cpos(s: Mat2) -> tuple:
    if not s.is_integral() or s.det != 1:
        raise ValueError(f"expected a matrix in SL(2,Z), got {s}")
    if s.c <= 0:
        raise ValueError("the closed form needs c > 0; use the chain for other matrices")
    return tuple(int(e) for e in s.entries())


def phi_closed(m: int, x: TorsionPoint, sigma: Mat2) -> HomPoly:
    """Closed form on SL(2,Z) with c > 0 via generalized Dedekind sums."""
    _check_weight(m, x)
    a, b, c, d = _require_sl2z_cpos(sigma)
    n = m - 2
    L1 = HomPoly.linear(a, c)
    L2 = HomPoly.linear(b, d)
    out = _integral(n, 0, Fraction(a, c)) * (-_B(m, x.x1) / m)
    out = out + _integral(n, Fraction(-d, c), 0, L1, L2) * (-_B(m, a * x.x1 + c * x.x2) / m)
    for k in range(n + 1):
        S = grd_sum(m - k - 1, k + 1, x, a, c, symmetric=True)
        if S:
            out = out + (_T1 ** k) * (L1 ** (n - k)) * ((-1) ** k * comb(n, k) * S)
    return out


# ---------------------------------------------------------------------------
# symmetric variant, m = 2n, values in W_{n-1,n-1}

def _n_of(n: int) -> int:
    if n < 1:
        raise ValueError(f"symmetric variant needs n >= 1, got {n}")
    return 2 * n


def _sym_integral(n: int, lo, hi, A: HomPoly = _T1, B: HomPoly = _T2) -> HomPoly4:
    """int_lo^hi (t A(T1,T2) + B(T1,T2))^(n-1) (t A(T3,T4) + B(T3,T4))^(n-1) dt."""
    left = linear_power_in_t(A, B, n - 1)
    prod = t_poly_mul(left, left, HomPoly4.tensor)
    return poly_integrate(prod, lo, hi)


def phi_sym_on_borel(n: int, x: TorsionPoint, beta: Mat2) -> HomPoly4:
    m = _n_of(n)
    _check_weight(m, x)
    if beta.c != 0 or beta.det <= 0:
        raise ValueError(f"expected an upper triangular matrix with det > 0, got {beta}")
    return _sym_integral(n, 0, beta.b / beta.d) * (-_B(m, x.x1) / m)


def _sym_sum(n: int, m: int, Sfun: Callable[[int, int], Fraction], L: HomPoly) -> HomPoly4:
    p = n - 1
    out = HomPoly4.zero(p)
    for k in range(p + 1):
        left = (_T1 ** k) * (L ** (p - k))
        for l in range(p + 1):
            S = Sfun(m - k - l - 1, k + l + 1)
            if S:
                right = (_T1 ** l) * (L ** (p - l))
                coef = S * ((-1) ** (k + l) * comb(p, k) * comb(p, l))
                out = out + HomPoly4.tensor(left, right) * coef
    return out


def phi_sym_at_sigma0(n: int, x: TorsionPoint) -> HomPoly4:
    m = _n_of(n)
    _check_weight(m, x)
    return _sym_sum(n, m, lambda p, q: (_B(p, x.x1) / p) * (_B(q, x.x2) / q), _T2)


def phi_sym_closed(n: int, x: TorsionPoint, sigma: Mat2) -> HomPoly4:
    m = _n_of(n)
    _check_weight(m, x)
    a, b, c, d = _require_sl2z_cpos(sigma)
    L1 = HomPoly.linear(a, c)
    L2 = HomPoly.linear(b, d)
    out = _sym_integral(n, 0, Fraction(a, c)) * (-_B(m, x.x1) / m)
    out = out + _sym_integral(n, Fraction(-d, c), 0, L1, L2) * (-_B(m, a * x.x1 + c * x.x2) / m)
    return out + _sym_sum(n, m, lambda p, q: grd_sum(p, q, x, a, c, symmetric=True), L1)


# ---------------------------------------------------------------------------
# Bruhat chain

def _bruhat(g: Mat2):
    """(b1, b2) with g = b1 sigma_0 b2, or None when g is upper triangular."""
    parts = bruhat_factor(g)
    if isinstance(parts, Mat2):
        return None
    b1, _, b2 = parts
    return b1, b2


def bruhat_factor_alt(g: Mat2, lam: Fraction = Fraction(2)):
    """A second Bruhat convention: (b1 diag(lam,1)) sigma_0 (diag(1,1/lam) b2)."""
    br = _bruhat(g)
    if br is None:
        return None
    b1, b2 = br
    lam = Fraction(lam)
    return b1 @ Mat2(lam, 0, 0, 1), Mat2(1, 0, 0, 1 / lam) @ b2


class _Flavor:
    def __init__(self, m, zero, borel, sigma0, act):
        self.m, self.zero, self.borel, self.sigma0, self.act = m, zero, borel, sigma0, act


def _chain(fl: _Flavor, xs: Weighted, g: Mat2, split):
    if g.det <= 0:
        raise ValueError("the cocycle is defined on GL+(2,Q) only")
    if fl.m == 2 and any(p.is_zero() for p in xs):
        raise WeightOriginError("Phi^(2) is undefined at the weight-2 origin x = 0")
    if not xs:
        return fl.zero
    parts = split(g)
    if parts is None:
        return fl.borel(xs, g)
    b1, b2 = parts
    x1 = twist_subscript(xs, b1, fl.m)
    if fl.m == 2 and any(p.is_zero() for p in x1):
        raise WeightOriginError("Phi^(2) is undefined at the weight-2 origin x = 0")
    inner = fl.sigma0(x1)
    x2 = twist_subscript(x1, SIGMA0, fl.m)
    inner = inner + fl.act(SIGMA0, _chain(fl, x2, b2, split))
    return _chain(fl, xs, b1, split) + fl.act(b1, inner)


def _weighted_scalar(xs: Weighted, f: Callable[[TorsionPoint], Fraction]) -> SqrtSum:
    """sum_p k_p f(p), exact."""
    out = SqrtSum()
    for p, k in xs.items():
        v = f(p)
        if v:
            out = out + k * v
    return out


def _split_for(convention: str):
    if convention == "standard":
        return _bruhat
    if convention == "alt":
        return bruhat_factor_alt
    raise ValueError(f"unknown Bruhat convention {convention!r}")


# The generator values are linear in x, so on a weighted subscript each
# coefficient is a weighted sum of Bernoulli products; summing those scalars
# first keeps the chain cheap when the twisted subscripts get large.

def _flavor(m: int) -> _Flavor:
    def borel(xs: Weighted, g: Mat2) -> HomPoly:
        if g.c != 0 or g.det <= 0:
            raise ValueError(f"expected an upper triangular matrix with det > 0, got {g}")
        return _integral(m - 2, 0, g.b / g.d) * _weighted_scalar(xs, lambda p: -_B(m, p.x1) / m)

    def sigma0(xs: Weighted) -> HomPoly:
        cs = []
        for k in range(m - 1):
            p, q = m - k - 1, k + 1
            sk = _weighted_scalar(xs, lambda x: (_B(p, x.x1) / p) * (_B(q, x.x2) / q))
            cs.append(sk * ((-1) ** k * comb(m - 2, k)))
        return HomPoly(cs)

    return _Flavor(m, HomPoly.zero(m - 2), borel, sigma0, gl_act)


def _sym_flavor(n: int) -> _Flavor:
    m = _n_of(n)

    def borel(xs: Weighted, g: Mat2) -> HomPoly4:
        if g.c != 0 or g.det <= 0:
            raise ValueError(f"expected an upper triangular matrix with det > 0, got {g}")
        return _sym_integral(n, 0, g.b / g.d) * _weighted_scalar(xs, lambda p: -_B(m, p.x1) / m)

    def sigma0(xs: Weighted) -> HomPoly4:
        return _sym_sum(n, m, lambda p, q: _weighted_scalar(
            xs, lambda x: (_B(p, x.x1) / p) * (_B(q, x.x2) / q)), _T2)

    return _Flavor(m, HomPoly4.zero(n - 1), borel, sigma0, gl_act4)


def phi_chain(m: int, x: Subscript, g: Mat2, *, convention: str = "standard") -> HomPoly:
    """Phi^(m)_x(g) for any g in GL+(2,Q), from generator values only.

    ``x`` may be a point, a TorsionSum, or a map point -> scalar (the result
    is linear in it).
    """
    if m < 2:
        raise ValueError(f"weight must be >= 2, got {m}")
    return _chain(_flavor(m), _as_weighted(x), g, _split_for(convention))


def phi_sym(n: int, x: Subscript, g: Mat2, *, convention: str = "standard") -> HomPoly4:
    """Symmetric-tensor variant (m = 2n) on GL+(2,Q) by the same chain."""
    return _chain(_sym_flavor(n), _as_weighted(x), g, _split_for(convention))


def cocycle_defect(m: int, x: Subscript, alpha: Mat2, beta: Mat2) -> HomPoly:
    """Phi_x(alpha beta) - Phi_x(alpha) - alpha . Phi_{x|alpha}(beta)."""
    lhs = phi_chain(m, x, alpha @ beta)
    rhs = phi_chain(m, x, alpha) + gl_act(alpha, phi_chain(m, twist_subscript(x, alpha, m), beta))
    return lhs - rhs
