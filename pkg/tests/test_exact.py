from fractions import Fraction
from itertools import combinations
from math import gcd, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quasitoric.exact import (
    DimensionError,
    columns,
    det,
    det_cofactor,
    format_rat,
    identity,
    matmul,
    primitivize,
    rat,
    snf,
)


def minors_gcd(m, k):
    """gcd of all k x k minors; d_1 * ... * d_k equals this (independent oracle)."""
    g = 0
    for rows in combinations(range(len(m)), k):
        for cols in combinations(range(len(m[0])), k):
            g = gcd(g, det_cofactor([[m[r][c] for c in cols] for r in rows]))
    return g


def diag(d, nrows, ncols):
    return [[d[i] if i == j and i < len(d) else 0 for j in range(ncols)] for i in range(nrows)]


@pytest.mark.parametrize(
    "m, expected",
    [
        (identity(2), 1),
        (columns([(1, 0), (-1, -2)]), -2),
        (columns([(1, 0, 0), (0, 1, 0), (-1, -1, -1)]), -1),
    ],
)
def test_det_examples(m, expected):
    assert det(m) == expected
    assert det_cofactor(m) == expected


def test_det_rejects_non_square():
    with pytest.raises(DimensionError):
        det([[1, 2, 3], [4, 5, 6]])


@pytest.mark.parametrize(
    "m, d",
    [
        ([[2, 0], [0, 3]], (1, 6)),
        (identity(3), (1, 1, 1)),
        (columns([(1, 0), (-1, -2)]), (1, 2)),
    ],
)
def test_snf_examples(m, d):
    res = snf(m)
    assert res.d == d
    assert matmul(matmul(res.u, m), res.v) == diag(d, len(m), len(m[0]))


@pytest.mark.parametrize(
    "v, expected",
    [((2, 4), (1, 2)), ((1, 0), (1, 0)), ((-3, -6, -9), (-1, -2, -3))],
)
def test_primitivize(v, expected):
    assert primitivize(v) == expected


def test_primitivize_zero():
    with pytest.raises(ValueError):
        primitivize((0, 0))


small_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=200, deadline=None)
@given(small_matrices)
def test_snf_recomposes(m):
    d, u, v = snf(m)
    assert matmul(matmul(u, m), v) == diag(d, len(m), len(m[0]))
    assert abs(det(u)) == 1 and abs(det(v)) == 1
    assert all(x >= 0 for x in d)
    nz = [x for x in d if x]
    assert d[: len(nz)] == tuple(nz)  # zeros trail
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    for k in range(1, len(nz) + 1):
        assert prod(nz[:k]) == minors_gcd(m, k)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_against_cofactors_and_snf(m):
    dv = det(m)
    assert dv == det_cofactor(m)
    assert abs(dv) == prod(snf(m).d)


fractions = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 100)


@given(fractions, fractions, fractions)
def test_rational_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    for q in (a + b, a * b):
        assert q.denominator > 0 and gcd(abs(q.numerator), q.denominator) == 1


def test_rat_parsing():
    assert rat("3/6") == Fraction(1, 2)
    assert rat(" -4 ") == -4
    assert format_rat(Fraction(-2, 3)) == "-2/3"
    for bad in ("1/0", "x", "1.5"):
        with pytest.raises(ValueError):
            rat(bad)
    with pytest.raises(TypeError):
        rat(0.5)
