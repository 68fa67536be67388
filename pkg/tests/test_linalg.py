from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from molpreduce.errors import DimensionMismatch, ZeroMatrix
from molpreduce.linalg import (
    Q,
    RationalMatrix,
    canonical_direction,
    nullspace,
    primitive,
    rank,
    rank_factorize,
    trivial_factorize,
)


def M(rows):
    return RationalMatrix.from_rows(rows)


def test_rational_parsing():
    assert Q("-2/4") == Fraction(-1, 2)
    assert Q(Fraction(3, 9)) == Q("1/3")
    assert str(Q("6/4")) == "3/2"
    with pytest.raises(ValueError):
        Q(float("nan"))


def test_rank_examples():
    assert rank(M([[1, 2], [2, 4]])) == 1
    assert rank(M([[1, 0], [0, 1], [1, 1], [2, 1]])) == 2
    assert rank(RationalMatrix.zeros(3, 2)) == 0
    assert rank(M([["1/3", "1/2"], ["2/3", "1"]])) == 1


def test_factorization_of_stacked_rows():
    P = M([[1, 0], [0, 1], [1, 1], [2, 1]])
    f = rank_factorize(P)
    assert f.k == 2 and f.rank_minimal
    assert f.L == P
    assert f.R == RationalMatrix.identity(2)
    assert f.product() == P


def test_factorization_rank_one():
    # pivot is the largest entry, 4 at (1, 1): L = column 1, R = row 1 / 4
    f = rank_factorize(M([[1, 2], [2, 4]]))
    assert f.k == 1
    assert f.L == M([[2], [4]])
    assert f.R == M([["1/2", 1]])


def test_zero_matrix_rejected():
    with pytest.raises(ZeroMatrix):
        rank_factorize(RationalMatrix.zeros(2, 3))


def test_trivial_factorizations():
    P = M([[1, 2, 3], [0, 1, 1]])
    left = trivial_factorize(P, "left")
    right = trivial_factorize(P, "right")
    assert left.L == P and left.R == RationalMatrix.identity(3) and not left.rank_minimal
    assert right.L == RationalMatrix.identity(2) and right.R == P and right.rank_minimal
    with pytest.raises(ValueError):
        trivial_factorize(P, "middle")


def test_shape_errors():
    with pytest.raises(DimensionMismatch):
        M([[1, 2], [3]])
    with pytest.raises(DimensionMismatch):
        M([[1, 2]]) @ M([[1, 2]])


def test_nullspace_and_directions():
    assert nullspace(M([[1, 1, 0]])) == [(-1, 1, 0), (0, 0, 1)]
    assert primitive([Q("1/2"), Q("-1/3")]) == (3, -2)
    assert canonical_direction([-2, 4]) == (1, -2)
    assert primitive([-2, 4]) == (-1, 2)


entries = st.integers(min_value=-4, max_value=4)


@st.composite
def matrices(draw, max_dim=5):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    rows = draw(st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r))
    if rows[0] == [0] * c:
        rows[0][0] = 1
    return M(rows)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_factorization_properties(P):
    f = rank_factorize(P)
    assert f.product() == P
    assert f.k == rank(P) == rank(f.L) == rank(f.R)
    assert f.L.shape == (P.rows, f.k) and f.R.shape == (f.k, P.cols)
    # L consists of actual columns of P
    cols = {P.col(j) for j in range(P.cols)}
    assert all(f.L.col(j) in cols for j in range(f.k))


@settings(max_examples=100, deadline=None)
@given(matrices(), st.integers(1, 3))
def test_rank_is_invariant_under_transpose_and_scaling(P, s):
    assert rank(P) == rank(P.T)
    scaled = RationalMatrix(P.rows, P.cols, tuple(x * s for x in P.entries))
    assert rank(scaled) == rank(P) <= min(P.shape)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_nullspace_dimension(P):
    basis = nullspace(P)
    assert len(basis) == P.cols - rank(P)
    for z in basis:
        assert all(v == 0 for v in P @ z)


def test_rank_one_stack():
    P = M([[1, 2], [2, 4], [3, 6]])
    assert rank(P) == 1
    f = rank_factorize(P)
    assert f.k == 1 and f.L.shape == (3, 1) and f.R.shape == (1, 2)
    assert f.product() == P


def test_identity_factorization():
    f = rank_factorize(RationalMatrix.identity(3))
    assert f.k == 3 and rank(f.L) == rank(f.R) == 3
    assert f.product() == RationalMatrix.identity(3)
    right = trivial_factorize(RationalMatrix.identity(3), "right")
    assert right.L == right.R == RationalMatrix.identity(3)


def test_trivial_left_shapes():
    f = trivial_factorize(M([[1, 1]]), "left")
    assert f.L == M([[1, 1]]) and f.R == RationalMatrix.identity(2)
    # rank 2 = n for the stacked rows, so the left factorization is rank-minimal
    assert trivial_factorize(M([[1, 0], [0, 1], [1, 1], [2, 1]]), "left").rank_minimal


def test_planted_rank_two_product():
    L = M([[1, 0], [0, 1], [1, 1], [2, -1], [0, 3], [1, 2]])
    R = M([[1, 2, 0, 1], [0, 1, 1, -1]])
    assert rank(L) == rank(R) == 2
    assert rank(L @ R) == 2
