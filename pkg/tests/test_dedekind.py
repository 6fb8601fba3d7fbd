import time
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import assume, given, strategies as st

from cocyclekit.arith import bernoulli_poly
from cocyclekit.dedekind import (
    b1,
    dedekind_sum,
    dedekind_sum_fast,
    dedekind_sum_naive_blocked,
    dedekind_sum_reciprocity,
    dedekind_sums_naive_table,
    grd_sum,
)
from cocyclekit.gl2 import TorsionPoint

F = Fraction


def test_b1_sawtooth():
    assert b1(F(1, 2)) == 0
    assert b1(F(7, 3)) == F(-1, 6)
    assert b1(0) == F(-1, 2)


@pytest.mark.parametrize("m, n, value", [(0, 1, 0), (1, 3, F(1, 18)), (1, 5, F(1, 5)), (2, 5, 0)])
def test_dedekind_examples(m, n, value):
    assert dedekind_sum(m, n) == value
    assert dedekind_sum_fast(m, n) == value


def test_fast_matches_naive_near_a_million():
    n = 10 ** 6 + 3
    assert dedekind_sum_fast(1, n) == dedekind_sum(1, n)


@given(st.integers(-200, 200), st.integers(1, 200))
def test_fast_matches_defining_sum(m, n):
    assume(gcd(m, n) == 1)
    assert dedekind_sum_fast(m, n) == dedekind_sum(m, n)


@given(st.integers(1, 10 ** 6), st.integers(2, 10 ** 6))
def test_reciprocity(m, n):
    assume(gcd(m, n) == 1)
    s = dedekind_sum_fast(m, n) + dedekind_sum_fast(n, m)
    assert s == F(m * m + n * n + 1, 12 * m * n) - F(1, 4)


@given(st.integers(-10 ** 12, 10 ** 12), st.integers(1, 10 ** 12))
def test_fast_matches_reciprocity_oracle(m, n):
    assume(gcd(m, n) == 1)
    assert dedekind_sum_fast(m, n) == dedekind_sum_reciprocity(m, n)


@given(st.integers(1, 300), st.integers(1, 300))
def test_symmetries(m, n):
    assume(gcd(m, n) == 1)
    s = dedekind_sum_fast(m, n)
    assert dedekind_sum_fast(-m, n) == -s
    assert dedekind_sum_fast(m + 7 * n, n) == s
    # s(m', n) = s(m, n) for m m' = 1 mod n
    if n > 1:
        assert dedekind_sum_fast(pow(m, -1, n), n) == s


def test_blocked_naive_matches_defining_sum():
    for m, n in [(3, 1000), (999, 1000 + 1), (12345, 99991), (1, 2)]:
        if gcd(m, n) == 1:
            assert dedekind_sum_naive_blocked(m, n) == dedekind_sum(m, n)


def test_naive_table():
    tab = dedekind_sums_naive_table(30)
    assert set(tab) == {m for m in range(1, 30) if gcd(m, 30) == 1}
    assert all(v == dedekind_sum(m, 30) for m, v in tab.items())


def test_fast_kernel_speed_at_1e12():
    n = 10 ** 12 + 39
    calls = 200
    t = time.perf_counter()
    for k in range(1, calls + 1):
        dedekind_sum_fast(k * 7919 + 1, n)
    per_call = (time.perf_counter() - t) / calls
    assert per_call < 1e-3


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        dedekind_sum(1, 0)
    with pytest.raises(ValueError):
        dedekind_sum_fast(2, 4)


def test_grd_single_term():
    # c = 1: the sum has the single term r = 0
    x = TorsionPoint(F(1, 3), F(1, 4))
    for p, q in [(1, 1), (2, 1), (1, 3), (2, 2)]:
        expected = bernoulli_poly(p, x.x1) * bernoulli_poly(q, x.x2) / (p * q)
        assert grd_sum(p, q, x, 0, 1) == expected


def test_grd_generalizes_dedekind_sum():
    # S^(1,1)_0(a/c) reduces to s(a, c) up to the boundary B_1(0) terms
    for a, c in [(1, 5), (2, 7), (5, 12)]:
        got = grd_sum(1, 1, TorsionPoint(0, 0), a, c, symmetric=True)
        assert got == dedekind_sum(a, c)
