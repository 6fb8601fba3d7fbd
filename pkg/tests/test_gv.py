from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cocyclekit.gl2 import IDENTITY, SIGMA0, Mat2
from cocyclekit.gv import (
    asai_e,
    asai_x,
    coboundary_phi_tilde,
    re_gv_borel,
    re_gv_tilde,
    re_gv_tilde_naive,
    transgression_defect,
)

from strategies import gl2q_plus, sl2q, sl2z

F = Fraction
T = Mat2(1, 1, 0, 1)


def test_asai_x():
    assert asai_x(SIGMA0) == 1
    assert asai_x(-IDENTITY) == -1
    assert asai_x(Mat2(2, 3, -5, -7)) == -5


@pytest.mark.parametrize("g1, g2, value", [(SIGMA0, SIGMA0, 1), (T, T, 0), (-IDENTITY, -IDENTITY, -1)])
def test_asai_examples(g1, g2, value):
    assert asai_e(g1, g2) == value


@given(sl2z(bound=30), st.integers(1, 9), st.integers(1, 9), st.integers(-9, 9))
def test_asai_vanishes_against_borel(s, p, q, b):
    beta = Mat2(F(p, q), F(b, q), 0, F(q, p))
    assert asai_e(s, beta) == 0


@given(sl2q(height=8, length=4), sl2q(height=8, length=4), sl2q(height=8, length=4))
def test_asai_is_a_cocycle(g1, g2, g3):
    lhs = asai_e(g2, g3) - asai_e(g1 @ g2, g3) + asai_e(g1, g2 @ g3) - asai_e(g1, g2)
    assert lhs == 0


def test_asai_rejects_non_sl2():
    with pytest.raises(ValueError):
        asai_e(Mat2(2, 0, 0, 1), T)


@pytest.mark.parametrize("g1, g2, value", [
    (SIGMA0, SIGMA0, 0),
    (Mat2(1, 0, 0, 2), T, F(-1, 12)),
])
def test_re_gv_examples(g1, g2, value):
    assert re_gv_tilde(g1, g2) == value
    assert re_gv_tilde_naive(g1, g2) == value


@pytest.mark.parametrize("m", range(1, 13))
def test_re_gv_diagonal_against_sigma0(m):
    for n in range(1, 13):
        assert re_gv_tilde(Mat2(m, 0, 0, n), SIGMA0) == 0


@given(gl2q_plus(), gl2q_plus())
def test_fast_matches_enumeration(g1, g2):
    assert re_gv_tilde(g1, g2) == re_gv_tilde_naive(g1, g2)


@given(gl2q_plus(), gl2q_plus(), st.integers(1, 6), st.integers(1, 6))
def test_pgl_invariance(g1, g2, k1, k2):
    v = re_gv_tilde(g1, g2)
    assert re_gv_tilde(g1.scale(F(k1, k2)), g2) == v
    assert re_gv_tilde(g1, g2.scale(k2)) == v


@given(gl2q_plus(), gl2q_plus(), gl2q_plus())
def test_group_cocycle(g1, g2, g3):
    d = re_gv_tilde(g2, g3) - re_gv_tilde(g1 @ g2, g3) + re_gv_tilde(g1, g2 @ g3) - re_gv_tilde(g1, g2)
    assert d == 0


@given(sl2z(bound=30), sl2z(bound=30))
def test_re_gv_vanishes_on_sl2z(s1, s2):
    assert re_gv_tilde(s1, s2) == 0


def test_borel_closed_form_examples():
    b1 = Mat2(2, 0, 0, F(1, 2))
    assert re_gv_borel(b1, T) == F(1, 2)
    assert re_gv_borel(IDENTITY, Mat2(3, 5, 0, F(1, 3))) == 0
    assert re_gv_borel(b1, IDENTITY) == 0
    with pytest.raises(ValueError):
        re_gv_borel(Mat2(-1, 0, 0, -1), T)


@given(st.integers(1, 12), st.integers(1, 12), st.integers(-12, 12), st.integers(1, 12),
       st.integers(1, 12), st.integers(1, 12), st.integers(-12, 12), st.integers(1, 12))
def test_borel_closed_form_matches_general(p1, q1, b1n, b1d, p2, q2, b2n, b2d):
    a1, a2 = F(p1, q1), F(p2, q2)
    beta1 = Mat2(a1, F(b1n, b1d), 0, 1 / a1)
    beta2 = Mat2(a2, F(b2n, b2d), 0, 1 / a2)
    assert re_gv_borel(beta1, beta2) == re_gv_tilde(beta1, beta2)


@pytest.mark.parametrize("g1, g2", [(SIGMA0, SIGMA0), (T, T), (-IDENTITY, SIGMA0), (IDENTITY, SIGMA0), (IDENTITY, Mat2(3, F(1, 2), 0, F(1, 3)))])
def test_transgression_hand_cases(g1, g2):
    assert transgression_defect(g1, g2) == 0


def test_transgression_components_sigma0():
    assert re_gv_tilde(SIGMA0, SIGMA0) == 0
    assert asai_e(SIGMA0, SIGMA0) == 1
    assert coboundary_phi_tilde(SIGMA0, SIGMA0) == 1


@given(sl2q(), sl2q())
def test_transgression_random(g1, g2):
    assert transgression_defect(g1, g2) == 0


@settings(max_examples=20)
@given(sl2q(height=4, length=3), sl2q(height=4, length=3))
def test_transgression_with_enumerated_gv(g1, g2):
    assert transgression_defect(g1, g2, naive=True) == 0
