import pytest
from hypothesis import given, settings
import hypothesis.strategies as st
from sympy import Rational

from schober.core.arith import (
    charpoly, column, format_rational, hstack, identity, is_unimodular, mat, mat_det,
    mat_inverse, mat_rank, mat_rank_inverse_solve, mat_solve, matmul, rank_one_factor, zeros,
    smith_normal_form, to_rational,
)
from schober.errors import (
    DimensionMismatchError, InconsistentSystemError, InputFormatError, SingularMatrixError,
)

small_ints = st.integers(min_value=-4, max_value=4)


def square(n):
    return st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n)


def test_rational_parsing_and_format():
    assert to_rational('3/6') == Rational(1, 2)
    assert to_rational(' -4 ') == -4
    assert format_rational(Rational(-2, 4)) == '-1/2'
    assert format_rational(Rational(6, 3)) == '2'
    for bad in ('1/0', '1.5', 'x', True, 0.5):
        with pytest.raises(InputFormatError):
            to_rational(bad)


def test_matrix_shapes():
    with pytest.raises(DimensionMismatchError):
        mat([[1, 2], [3]])
    with pytest.raises(DimensionMismatchError):
        matmul(mat([[1, 2]]), mat([[1, 2]]))
    assert mat([], ncols=3).shape == (0, 3)
    assert hstack([zeros(2, 0), column([1, 2])], 2).shape == (2, 1)


def test_inverse_and_singular():
    m = mat([[2, 1], [1, 1]])
    assert matmul(m, mat_inverse(m)) == identity(2)
    with pytest.raises(SingularMatrixError):
        mat_inverse(mat([[1, 2], [2, 4]]))
    assert mat_det(mat([[0, -1], [1, 2]])) == 1
    assert is_unimodular(mat([[0, -1], [1, 2]]))
    assert not is_unimodular(mat([[2, 0], [0, 1]]))


def test_solve_particular_and_inconsistent():
    m = mat([[1, 2], [2, 4]])
    x = mat_solve(m, column([3, 6]))
    assert matmul(m, x) == column([3, 6])
    with pytest.raises(InconsistentSystemError):
        mat_solve(m, column([1, 0]))


def test_rank_inverse_solve_bundle():
    info = mat_rank_inverse_solve(mat([[1, 2], [2, 4]]), column([1, 0]))
    assert info.rank == 1
    assert info.singular and info.inverse is None
    assert info.consistent is False
    info = mat_rank_inverse_solve(mat([[1, 1], [0, 1]]), column([2, 1]))
    assert info.inverse == mat([[1, -1], [0, 1]])
    assert info.solution == column([1, 1])


def test_rank_one_factor():
    m = mat([[-1, -1], [1, 1]])
    left, right = rank_one_factor(m)
    assert left.cols == 1 and right.rows == 1
    assert matmul(left, right) == m


def test_charpoly():
    assert charpoly(mat([[0, -1], [1, 2]])) == [1, -2, 1]


def test_smith_normal_form_example():
    m = mat([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    snf = smith_normal_form(m)
    assert snf.invariant_factors() == [2, 6, 12]
    assert matmul(snf.left, m, snf.right) == snf.diag
    assert is_unimodular(snf.left) and is_unimodular(snf.right)


def test_smith_needs_integers():
    with pytest.raises(InputFormatError):
        smith_normal_form(mat([['1/2', 0], [0, 1]]))


@settings(max_examples=60, deadline=None)
@given(square(3))
def test_smith_transforms(rows):
    m = mat(rows)
    snf = smith_normal_form(m)
    assert matmul(snf.left, m, snf.right) == snf.diag
    factors = snf.invariant_factors()
    assert len(factors) == mat_rank(m)
    assert all(f > 0 for f in factors)
    assert all(b % a == 0 for a, b in zip(factors, factors[1:]))


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=6).flatmap(square))
def test_inverse_when_det_nonzero(rows):
    m = mat(rows)
    n = m.rows
    if mat_det(m) == 0:
        assert mat_rank(m) < n
        with pytest.raises(SingularMatrixError):
            mat_inverse(m)
    else:
        inverse = mat_inverse(m)
        assert matmul(m, inverse) == identity(n)
        assert matmul(inverse, m) == identity(n)
