"""Floating-point q-series oracle: G2, eta, Delta, mu_gamma and numeric path
integrals, used to cross-check the exact formulas independently.

All series evaluations require Im z >= GUARD_IM (default 0.3); paths are
straight segments checked node by node.
"""
from __future__ import annotations

import cmath
import math
from functools import lru_cache
from math import comb
from typing import Sequence, Tuple

import numpy as np

from .gl2 import Mat2

__all__ = [
    "GUARD_IM",
    "SLASH_DET_EXPONENT",
    "GuardError",
    "eval_G2",
    "eval_eta",
    "eval_log_eta",
    "eval_delta",
    "eval_mu",
    "mu_from_eta",
    "gv_numeric",
    "tgv_delta_numeric",
    "act_numeric",
    "asai_e_numeric",
    "moebius",
]

GUARD_IM = 0.3
# weight-k slash: f|g(z) = det(g)^(k * SLASH_DET_EXPONENT) (cz+d)^-k f(gz)
SLASH_DET_EXPONENT = 0.5
NODES_PER_UNIT = 64
TWO_PI_I = 2j * math.pi


class GuardError(ValueError):
    """A series evaluation point or a path left the region Im z >= GUARD_IM."""


def _terms_for(im: float, tol: float = 1e-20) -> int:
    # |q|^n < tol with |q| = exp(-2 pi Im z)
    return max(8, int(math.ceil(-math.log(tol) / (2 * math.pi * im))) + 5)


@lru_cache(maxsize=16)
def _sigma1(n: int) -> np.ndarray:
    """sigma_1(N) for N = 1..n (index N-1)."""
    s = np.zeros(n + 1, dtype=np.float64)
    for d in range(1, n + 1):
        s[d::d] += d
    return s[1:]


def _guard(z: np.ndarray, guard: float, what: str) -> None:
    lo = float(np.min(z.imag))
    if lo < guard:
        raise GuardError(f"{what}: Im z = {lo:.4g} below the guard {guard}")


def _as_array(z) -> Tuple[np.ndarray, bool]:
    arr = np.asarray(z, dtype=np.complex128)
    return arr.reshape(-1), arr.ndim == 0


def eval_G2(z, nterms: int | None = None, *, guard: float = 0.0):
    """G2(z) = pi^2/3 - 8 pi^2 sum_N sigma_1(N) q^N, q = exp(2 pi i z).

    Truncation error is O(|q|^nterms * nterms^2); by default nterms makes
    |q|^nterms < 1e-20 at the lowest point.
    """
    zs, scalar = _as_array(z)
    if np.any(zs.imag <= 0):
        raise GuardError("G2 needs Im z > 0")
    _guard(zs, guard, "G2")
    n = nterms or _terms_for(float(np.min(zs.imag)))
    q = np.exp(TWO_PI_I * zs)
    powers = q[:, None] ** np.arange(1, n + 1)[None, :]
    val = math.pi ** 2 / 3 - 8 * math.pi ** 2 * (powers @ _sigma1(n))
    return complex(val[0]) if scalar else val


def eval_log_eta(z, nterms: int | None = None):
    """log eta(z) = pi i z / 12 + sum log(1 - q^n), analytic on H (no branch cut
    is crossed because |q^n| < 1)."""
    zs, scalar = _as_array(z)
    if np.any(zs.imag <= 0):
        raise GuardError("eta needs Im z > 0")
    n = nterms or _terms_for(float(np.min(zs.imag)))
    q = np.exp(TWO_PI_I * zs)
    powers = q[:, None] ** np.arange(1, n + 1)[None, :]
    val = 1j * math.pi * zs / 12 + np.log1p(-powers).sum(axis=1)
    return complex(val[0]) if scalar else val


def eval_eta(z, nterms: int | None = None):
    """q^(1/24) prod_{n <= nterms} (1 - q^n)."""
    v = np.exp(eval_log_eta(z, nterms))
    return complex(v) if np.ndim(v) == 0 else v


def eval_delta(z, nterms: int | None = None):
    v = np.exp(24 * np.asarray(eval_log_eta(z, nterms)))
    return complex(v) if np.ndim(v) == 0 else v


def moebius(g: Mat2, z):
    a, b, c, d = (float(e) for e in g.entries())
    return (a * z + b) / (c * z + d)


def eval_mu(g: Mat2, z, *, guard: float = GUARD_IM):
    """mu_g(z) = (1/2 pi^2)(G2|g(z) - G2(z) + 2 pi i c/(cz + d))."""
    a, b, c, d = (float(e) for e in g.entries())
    det = float(g.det)
    if det <= 0:
        raise ValueError("mu needs det > 0")
    zs, scalar = _as_array(z)
    _guard(zs, guard, "mu (z)")
    j = c * zs + d
    gz = (a * zs + b) / j
    _guard(gz, guard, "mu (g z)")
    slashed = det ** (2 * SLASH_DET_EXPONENT) * j ** -2 * eval_G2(gz)
    val = (slashed - eval_G2(zs) + TWO_PI_I * c / j) / (2 * math.pi ** 2)
    return complex(val[0]) if scalar else val


def mu_from_eta(g: Mat2, z, h: float = 1e-5):
    """(1/12 pi i) d/dz log(Delta|g / Delta), by a central difference.

    log(Delta|g/Delta) = 6 log det - 12 log(cz+d) + log Delta(gz) - log Delta(z);
    the log det constant drops out of the derivative.
    """
    c, d = float(g.c), float(g.d)

    def L(w):
        return -12 * cmath.log(c * w + d) + 24 * eval_log_eta(moebius(g, w)) - 24 * eval_log_eta(w)

    deriv = (L(z + h) - L(z - h)) / (2 * h)
    return deriv / (12j * math.pi)


@lru_cache(maxsize=64)
def _gauss(n: int):
    return np.polynomial.legendre.leggauss(n)


def _segment_nodes(z0: complex, z1: complex, per_unit: int = NODES_PER_UNIT):
    length = abs(z1 - z0)
    panels = max(1, int(math.ceil(length)))
    x, w = _gauss(per_unit)
    nodes, weights = [], []
    for p in range(panels):
        a = z0 + (z1 - z0) * p / panels
        b = z0 + (z1 - z0) * (p + 1) / panels
        nodes.append((a + b) / 2 + (b - a) / 2 * x)
        weights.append((b - a) / 2 * w)
    return np.concatenate(nodes), np.concatenate(weights)


def gv_numeric(g1: Mat2, g2: Mat2, z0: complex, *, per_unit: int = NODES_PER_UNIT,
               guard: float = GUARD_IM) -> complex:
    """GV(g1, g2) = int_{z0}^{g2 z0} mu_{g1}(z) dz along the straight segment."""
    z1 = complex(moebius(g2, z0))
    if z1 == z0:
        return 0j
    nodes, weights = _segment_nodes(complex(z0), z1, per_unit)
    return complex(np.dot(weights, eval_mu(g1, nodes, guard=guard)))


def gv_numeric_error(g1: Mat2, g2: Mat2, z0: complex) -> float:
    """Difference between the default rule and one with twice the nodes."""
    return abs(gv_numeric(g1, g2, z0) - gv_numeric(g1, g2, z0, per_unit=2 * NODES_PER_UNIT))


def act_numeric(g: Mat2, coeffs: Sequence[complex]) -> np.ndarray:
    """W_m action on a complex coefficient vector (index k <-> T1^k T2^(m-k))."""
    from .polymod import substitution_matrix

    m = len(coeffs) - 1
    S = np.array(substitution_matrix(g.a, g.b, g.c, g.d, m), dtype=np.float64)
    return float(g.det) ** (-m / 2) * (S @ np.asarray(coeffs, dtype=np.complex128))


def tgv_delta_numeric(g: Mat2, z0: complex, nterms: int | None = None, *,
                      end: complex | None = None, guard: float = GUARD_IM) -> np.ndarray:
    """int_{z0}^{g z0} (z T1 + T2)^10 Delta(z) dz as 11 coefficients (T1-degree order).

    ``end`` overrides the endpoint (used for base-point vectors).
    """
    z1 = complex(moebius(g, z0)) if end is None else complex(end)
    if z1 == z0:
        return np.zeros(11, dtype=np.complex128)
    nodes, weights = _segment_nodes(complex(z0), z1)
    _guard(nodes, guard, "TGV path")
    vals = weights * eval_delta(nodes, nterms)
    ks = np.arange(11)
    binom = np.array([comb(10, k) for k in ks], dtype=np.float64)
    return binom * (nodes[None, :] ** ks[:, None] @ vals)


def _log_j(g: Mat2, z: complex) -> complex:
    v = cmath.log(float(g.c) * z + float(g.d))
    if v.imag >= math.pi:      # Im log in [-pi, pi)
        v = complex(v.real, v.imag - 2 * math.pi)
    return v


def asai_e_numeric(g1: Mat2, g2: Mat2, z: complex) -> complex:
    """(1/2 pi i)(log j(g2, z) + log j(g1, g2 z) - log j(g1 g2, z))."""
    if z.imag <= 0:
        raise GuardError("asai_e_numeric needs Im z > 0")
    w = complex(moebius(g2, z))
    return (_log_j(g2, z) + _log_j(g1, w) - _log_j(g1 @ g2, z)) / TWO_PI_I
