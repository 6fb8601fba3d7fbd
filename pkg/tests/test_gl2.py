from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cocyclekit.gl2 import (
    IDENTITY,
    SIGMA0,
    Mat2,
    TorsionPoint,
    TorsionSum,
    ZERO_POINT,
    bruhat_factor,
    check_matrix,
    fiber,
    fiber_bruteforce,
    integral_rep,
    parse_matrix,
    parse_point,
    pipe_action,
    primitive_rep,
    sl2z_factor,
    smith_normal_form,
)

from strategies import gl2q_plus, sl2z, torsion_points

F = Fraction


def test_parse_roundtrip():
    M = parse_matrix("1/2 -3; 0 4")
    assert M == Mat2(F(1, 2), -3, 0, 4)
    assert parse_matrix(str(M)) == M
    assert parse_point("1/3, 5/4") == TorsionPoint(F(1, 3), F(1, 4))
    with pytest.raises(ValueError):
        parse_matrix("1 2 3")
    with pytest.raises(ValueError):
        parse_point("1/2")


def test_torsion_point_reduction():
    assert TorsionPoint(F(-1, 3), 2) == TorsionPoint(F(2, 3), 0)
    assert TorsionPoint(F(1, 4), F(1, 6)).order() == 12


@pytest.mark.parametrize("M, expected", [
    (Mat2(2, 0, 0, 2), Mat2(2, 0, 0, 2)),
    (SIGMA0, Mat2(0, 1, -1, 0)),
    (IDENTITY, IDENTITY),
])
def test_check_matrix(M, expected):
    assert check_matrix(M) == expected


@pytest.mark.parametrize("M, expected", [
    (Mat2(F(1, 2), 0, 0, F(1, 2)), IDENTITY),
    (Mat2(2, 2, -2, 0), Mat2(-1, -1, 1, 0)),
])
def test_primitive_rep(M, expected):
    assert primitive_rep(M) == expected


def test_primitive_rep_rejects_negative_det():
    with pytest.raises(ValueError):
        primitive_rep(Mat2(0, -1, -1, 0))


def test_integral_rep_keeps_sign():
    assert integral_rep(-IDENTITY) == -IDENTITY
    assert primitive_rep(-IDENTITY) == IDENTITY


@given(gl2q_plus())
def test_sl2z_factor(g):
    s, b = sl2z_factor(g)
    assert s @ b == g
    assert s.is_integral() and s.det == 1
    assert b.c == 0
    if g.c != 0:
        assert b.a > 0
    else:
        assert s == IDENTITY


def test_sl2z_factor_examples():
    b = Mat2(1, 1, 0, 1)
    assert sl2z_factor(b) == (IDENTITY, b)
    s, beta = sl2z_factor(Mat2(1, 0, F(1, 2), 1))
    assert (s.a, s.c) == (2, 1)
    assert beta.c == 0 and s @ beta == Mat2(1, 0, F(1, 2), 1)


@given(gl2q_plus())
def test_bruhat_factor(g):
    parts = bruhat_factor(g)
    if isinstance(parts, Mat2):
        assert g.c == 0
        return
    b1, s0, b2 = parts
    assert s0 == SIGMA0
    assert b1 @ SIGMA0 @ b2 == g
    assert b1.c == 0 and b2.c == 0 and b1.det > 0 and b2.det > 0


def test_bruhat_examples():
    assert bruhat_factor(Mat2(1, 1, 0, 1)) == Mat2(1, 1, 0, 1)
    assert bruhat_factor(SIGMA0) == (IDENTITY, SIGMA0, IDENTITY)
    b1, _, b2 = bruhat_factor(Mat2(1, -1, 1, 0))
    assert b1 @ SIGMA0 @ b2 == Mat2(1, -1, 1, 0)


@given(st.integers(-12, 12), st.integers(-12, 12), st.integers(-12, 12), st.integers(-12, 12))
def test_smith_normal_form(a, b, c, d):
    M = Mat2(a, b, c, d)
    if M.det <= 0:
        return
    (d1, d2), U, V = smith_normal_form(M)
    assert U @ M @ V == Mat2(d1, 0, 0, d2)
    assert abs(U.det) == 1 and abs(V.det) == 1
    assert d1 > 0 and d2 % d1 == 0


def test_fiber_examples():
    x = TorsionPoint(F(1, 3), F(1, 5))
    assert fiber(IDENTITY, x) == TorsionSum.point(x)
    got = fiber(Mat2(2, 0, 0, 2), ZERO_POINT)
    assert set(got) == {TorsionPoint(0, 0), TorsionPoint(0, F(1, 2)), TorsionPoint(F(1, 2), 0), TorsionPoint(F(1, 2), F(1, 2))}
    s = Mat2(2, 1, 1, 1)
    # y s = x has the single solution y = x s^-1
    assert fiber(s, x) == TorsionSum.point(x * s.inverse())


@given(st.integers(1, 5), st.integers(-4, 4), st.integers(-4, 4), st.integers(1, 5), torsion_points(max_den=4))
def test_fiber_matches_bruteforce(a, b, c, d, x):
    M = Mat2(a, b, c, d)
    if M.det <= 0:
        return
    got = fiber(M, x)
    assert got == fiber_bruteforce(M, x)
    assert got.total() == M.det
    assert all(y * M == x for y in got)


def test_pipe_action_examples():
    x = TorsionPoint(F(1, 3), F(2, 3))
    assert pipe_action(x, IDENTITY) == TorsionSum.point(x)
    assert set(pipe_action(ZERO_POINT, Mat2(1, 0, 0, 2))) == {TorsionPoint(0, 0), TorsionPoint(F(1, 2), 0)}
    # Gamma(3) fixes points of order dividing 3
    g = Mat2(1, 3, 0, 1) @ Mat2(1, 0, -3, 1)
    assert g.c < 0
    assert pipe_action(x, g) == TorsionSum.point(x)
    assert pipe_action(x, -IDENTITY) == TorsionSum.point(TorsionPoint(-x.x1, -x.x2))


@given(sl2z(bound=15), sl2z(bound=15), torsion_points(max_den=6))
def test_pipe_action_is_right_action_on_sl2z(g, h, x):
    assert pipe_action(pipe_action(x, g), h) == pipe_action(x, g @ h)


@given(sl2z(bound=20), torsion_points(max_den=9))
def test_pipe_action_sl2z_is_single_point(g, x):
    assert pipe_action(x, g) == TorsionSum.point(x * g)


def test_torsion_sum_arithmetic():
    p, q = TorsionPoint(F(1, 2), 0), TorsionPoint(0, F(1, 2))
    s = TorsionSum([p, p, q])
    assert s[p] == 2 and s.total() == 3
    assert (s + s * -1) == TorsionSum()
    assert len(TorsionSum({p: 0})) == 0


def test_mat2_basics():
    M = Mat2(1, 2, 3, 4)
    assert M @ M.inverse() == IDENTITY
    assert M.scale(F(1, 2)) == Mat2(F(1, 2), 1, F(3, 2), 2)
    assert not Mat2(F(1, 2), 0, 0, 1).is_integral()
    assert Mat2.of([[1, 2], [3, 4]]) == M
