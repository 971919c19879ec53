from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from clustertilt import linalg
from clustertilt.linalg import DimensionMismatch, RatMatrix


def test_rank_identity():  # [TRIVIAL]
    assert linalg.rank(RatMatrix.identity(2)) == 2


def test_rank_zero():  # [TRIVIAL]
    assert linalg.rank(RatMatrix.zero(2, 2)) == 0


def test_rank_dependent_rows():  # [DERIVED: row reduction by hand]
    assert linalg.rank([[1, 2], [2, 4]]) == 1


def test_kernel_identity_empty():  # [TRIVIAL]
    assert linalg.kernel_basis(RatMatrix.identity(3)) == []


def test_kernel_zero_full():  # [TRIVIAL]
    assert len(linalg.kernel_basis(RatMatrix.zero(2, 3))) == 3


def test_kernel_one_by_two():  # [DERIVED: hand solve]
    (v,) = linalg.kernel_basis([[1, 1]])
    assert v[0] == -v[1] != 0


def test_subspace_dims():  # [TRIVIAL] / [DERIVED: hand check]
    assert linalg.subspace_dim([(1, 0), (0, 1)]) == 2
    assert linalg.subspace_dim([(1, 1), (2, 2)]) == 1
    assert linalg.subspace_intersection_dim([(1, 0)], [(0, 1)]) == 0
    assert linalg.subspace_intersection_dim([(1, 0), (0, 1)], [(1, 1)]) == 1
    assert linalg.subspace_sum_dim([(1, 0, 0)], [(0, 1, 0)]) == 2


def test_mixed_ambient_rejected():
    with pytest.raises(DimensionMismatch):
        linalg.subspace_dim([(1, 0), (1, 0, 0)])
    with pytest.raises(DimensionMismatch):
        RatMatrix(2, 2, (Fraction(1),))


def test_rref_column_order():
    rows, piv = linalg.rref([[1, 1, 0], [0, 1, 1]], column_order=[2, 1, 0])
    assert piv == [2, 1]
    assert linalg.in_span((1, 1, 0), [(1, 1, 0), (0, 1, 1)])
    assert not linalg.in_span((1, 0, 0), [(0, 1, 1)])


matrices = st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=7),
                                min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_rank_matches_sympy(rows):  # [DERIVED: independent oracle, sympy]
    assert linalg.rank(rows) == sympy.Matrix(rows).rank()


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_rank_nullity_and_transpose(rows):
    m = RatMatrix.from_rows(rows)
    ker = linalg.kernel_basis(m)
    assert linalg.rank(m) + len(ker) == m.cols
    assert linalg.rank(m) == linalg.rank(m.transpose())
    for v in ker:
        assert not any(linalg.matvec(m.to_rows(), v))
    assert linalg.kernel_basis(m) == ker  # deterministic
