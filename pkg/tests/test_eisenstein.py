from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cocyclekit.dedekind import grd_sum
from cocyclekit.eisenstein import (
    WeightOriginError,
    a0_phi,
    bruhat_factor_alt,
    cocycle_defect,
    phi_at_sigma0,
    phi_chain,
    phi_closed,
    phi_on_borel,
    phi_sym,
    phi_sym_closed,
    twist_subscript,
)
from cocyclekit.gl2 import IDENTITY, SIGMA0, Mat2, TorsionPoint, TorsionSum
from cocyclekit.polymod import HomPoly, gl_act
from cocyclekit.sampling import random_gamma_n, rng_for

from strategies import gl2q_plus, sl2z, torsion_points

F = Fraction
T = Mat2(1, 1, 0, 1)
T1 = HomPoly.linear(1, 0)
T2 = HomPoly.linear(0, 1)
P = TorsionPoint


@pytest.mark.parametrize("m, x, value", [
    (2, P(F(1, 2), 0), F(1, 24)),
    (4, P(0, 0), F(1, 120)),
    (3, P(F(1, 3), F(2, 5)), F(-1, 81)),
])
def test_a0(m, x, value):
    assert a0_phi(m, x) == value


def test_weight_two_origin_is_refused():
    for fn in (lambda: a0_phi(2, P(0, 0)), lambda: phi_at_sigma0(2, P(0, 0)),
               lambda: phi_chain(2, P(0, 0), T), lambda: phi_closed(2, P(0, 0), SIGMA0)):
        with pytest.raises(WeightOriginError):
            fn()
    # the chain also refuses when a twisted subscript reaches the origin
    with pytest.raises(WeightOriginError):
        phi_chain(2, TorsionSum({P(0, 0): 1, P(F(1, 2), 0): 1}), SIGMA0)


def test_phi_on_borel_examples():
    assert phi_on_borel(3, P(F(1, 4), 0), IDENTITY).is_zero()
    assert phi_on_borel(2, P(F(1, 2), 0), T) == HomPoly.scalar(F(1, 24))
    expected = (T2 ** 2 + T1 * T2 + T1 ** 2 * F(1, 3)) * F(1, 120)
    assert phi_on_borel(4, P(0, F(1, 2)), T) == expected


def test_phi_at_sigma0_examples():
    assert phi_at_sigma0(2, P(F(1, 2), 0)).is_zero()
    assert phi_at_sigma0(2, P(F(1, 3), F(1, 3))) == HomPoly.scalar(F(1, 36))


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6, 8])
def test_closed_form_at_sigma0(m):
    for x in [P(F(1, 3), F(1, 4)), P(F(1, 2), 0), P(0, F(2, 5))]:
        assert phi_closed(m, x, SIGMA0) == phi_at_sigma0(m, x)


def test_closed_form_hand_example():
    x = P(F(1, 3), F(1, 3))
    s = Mat2(1, 0, 1, 1)
    # the generalized Dedekind term alone is -1/36; the two integral terms add 1/36 each
    assert grd_sum(1, 1, x, 1, 1, symmetric=True) == F(-1, 36)
    assert phi_closed(2, x, s) == HomPoly.scalar(F(1, 36))
    assert phi_chain(2, x, s) == HomPoly.scalar(F(1, 36))


def test_chain_recomposition():
    g = T @ SIGMA0
    assert g == Mat2(1, -1, 1, 0)
    for m in (3, 4, 6):
        x = P(F(1, 5), F(2, 3))
        expected = phi_on_borel(m, x, T) + gl_act(T, phi_at_sigma0(m, x * T))
        assert phi_chain(m, x, g) == expected
        assert phi_closed(m, x, g) == expected


@given(st.sampled_from([2, 3, 4, 6, 8]), torsion_points(max_den=12), sl2z(bound=20, c_positive=True))
def test_chain_equals_closed(m, x, s):
    if m == 2 and x.is_zero():
        return
    assert phi_chain(m, x, s) == phi_closed(m, x, s)


@given(st.integers(2, 6), torsion_points(max_den=8, nonzero=True))
def test_identity_gives_zero(m, x):
    assert phi_chain(m, x, IDENTITY).is_zero()
    assert cocycle_defect(m, x, IDENTITY, T).is_zero()


@settings(max_examples=30)
@given(st.integers(2, 5), st.integers(0, 10 ** 6), st.sampled_from([2, 3, 4, 6]))
def test_gamma_n_cocycle(N, seed, m):
    rng = rng_for("test", seed, N)
    x = P(F(rng.randrange(N), N), F(rng.randrange(N), N))
    if m == 2 and x.is_zero():
        x = P(F(1, N), 0)
    a, b = random_gamma_n(rng, N, height=2, length=3), random_gamma_n(rng, N, height=2, length=3)
    assert phi_chain(m, x, a @ b) == phi_chain(m, x, a) + gl_act(a, phi_chain(m, x, b))


@settings(max_examples=25)
@given(st.integers(2, 5), torsion_points(max_den=6, nonzero=True), gl2q_plus(), gl2q_plus())
def test_twisted_cocycle_relation(m, x, a, b):
    assert cocycle_defect(m, x, a, b).is_zero()


def test_twisted_relation_non_square_determinant():
    a = Mat2(2, 1, 1, 1) @ Mat2(1, 0, 0, 2)
    b = SIGMA0 @ Mat2(3, 1, 0, 1)
    for m in (2, 3, 4, 5):
        assert cocycle_defect(m, P(F(1, 3), F(1, 2)), a, b).is_zero()
    # odd weight: the twist weight is a genuine square root
    w = twist_subscript(P(F(1, 3), 0), Mat2(2, 0, 0, 1), 3)
    assert any(not k.is_rational() for k in w.values())


@given(st.sampled_from([2, 4, 6]), torsion_points(max_den=8, nonzero=True), gl2q_plus())
def test_even_weight_values_are_rational(m, x, g):
    assert phi_chain(m, x, g).is_rational()


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("m", [2, 3, 4, 6])
def test_distribution_relation(n, m):
    x = P(F(1, 5), F(2, 7))
    s = Mat2(3, 2, 7, 5)
    ys = {P((x.x1 + i) / n, (x.x2 + j) / n): 1 for i in range(n) for j in range(n)}
    assert phi_chain(m, x, s) == phi_chain(m, ys, s) * n ** (m - 2)


def test_unweighted_distribution_fails_above_weight_two():
    x = P(F(1, 5), F(2, 7))
    s = Mat2(3, 2, 7, 5)
    ys = {P((x.x1 + i) / 2, (x.x2 + j) / 2): 1 for i in range(2) for j in range(2)}
    assert phi_chain(2, x, s) == phi_chain(2, ys, s)
    assert phi_chain(4, x, s) != phi_chain(4, ys, s)


@given(st.integers(2, 6), torsion_points(max_den=8, nonzero=True), gl2q_plus())
def test_bruhat_convention_independence(m, x, g):
    assert phi_chain(m, x, g) == phi_chain(m, x, g, convention="alt")


def test_alt_bruhat_factorization_recomposes():
    g = Mat2(2, 3, 5, 11)
    b1, b2 = bruhat_factor_alt(g)
    assert b1 @ SIGMA0 @ b2 == g


@given(torsion_points(max_den=10, nonzero=True), sl2z(bound=15, c_positive=True))
def test_sym_n1_is_weight_two(x, s):
    v = phi_sym(1, x, s)
    assert v.p == 0
    assert v.grid[0][0] == phi_closed(2, x, s).coeffs[0]


@given(st.integers(1, 3), torsion_points(max_den=10, nonzero=True), sl2z(bound=15, c_positive=True))
def test_sym_chain_equals_closed_and_is_symmetric(n, x, s):
    chain = phi_sym(n, x, s)
    assert chain == phi_sym_closed(n, x, s)
    assert chain.is_symmetric()


@given(st.integers(1, 3), torsion_points(max_den=6, nonzero=True), gl2q_plus())
def test_sym_symmetric_on_gl2(n, x, g):
    assert phi_sym(n, x, g).is_symmetric()


def test_sym_identity_is_zero():
    assert phi_sym(2, P(F(1, 2), F(1, 3)), IDENTITY).is_zero()


def test_closed_form_preconditions():
    with pytest.raises(ValueError):
        phi_closed(4, P(0, 0), Mat2(1, 0, -1, 1))
    with pytest.raises(ValueError):
        phi_on_borel(4, P(0, 0), SIGMA0)
    with pytest.raises(ValueError):
        phi_chain(4, P(0, 0), Mat2(0, 1, 1, 0))
