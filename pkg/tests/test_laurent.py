import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from schober.core.laurent import (
    EXPONENT_MAX, EXPONENT_MIN, LaurentPoly, laurent_reduce, one_minus_t_power, product_of,
    reduction_matrix, window_of,
)
from schober.errors import BadModulusError, DimensionMismatchError, ExponentOverflowError

t = LaurentPoly.monomial


def test_arithmetic():
    p = one_minus_t_power(1) * one_minus_t_power(2)
    assert p.as_dict() == {0: 1, 1: -1, 2: -1, 3: 1}
    assert (p - p).is_zero()
    assert t(2).shift(-5) == t(-3)
    assert one_minus_t_power(1).substitute_inverse() == one_minus_t_power(-1)
    assert p.span() == 3
    assert str(LaurentPoly.from_dict({-1: 2, 0: -1})) == '-1 + 2t^-1'


def test_reduce_examples():
    modulus = one_minus_t_power(3)
    assert laurent_reduce(t(3), modulus, (0, 2)) == t(0)
    assert laurent_reduce(t(-1), modulus, (0, 2)) == t(2)
    assert laurent_reduce(t(7) + t(1), modulus, (0, 2)) == t(1) * 2


def test_reduce_flop_relation():
    koszul_plus = product_of([one_minus_t_power(-1)] * 2)
    assert laurent_reduce(t(1), koszul_plus, (-1, 0)) == LaurentPoly.from_dict({0: 2, -1: -1})


def test_reduce_errors():
    with pytest.raises(BadModulusError):
        laurent_reduce(t(1), LaurentPoly.from_dict({0: 2, 1: -1}), (0, 0))
    with pytest.raises(BadModulusError):
        laurent_reduce(t(1), LaurentPoly(), (0, 0))
    with pytest.raises(DimensionMismatchError):
        laurent_reduce(t(1), one_minus_t_power(2), (0, 2))
    with pytest.raises(ExponentOverflowError):
        t(EXPONENT_MAX).shift(1)


def test_unit_modulus_reduces_to_zero():
    assert laurent_reduce(t(5), t(0, -1), (0, -1)).is_zero()


def test_window_of():
    assert window_of(-2, one_minus_t_power(1) * one_minus_t_power(2)) == (-2, 0)


@settings(max_examples=80, deadline=None)
@given(st.dictionaries(st.integers(-12, 12), st.integers(-5, 5), max_size=6),
       st.integers(-6, 6))
def test_reduce_lands_in_window_and_is_congruent(coeffs, lo):
    p = LaurentPoly.from_dict(coeffs)
    modulus = one_minus_t_power(1) * one_minus_t_power(2)
    window = window_of(lo, modulus)
    r = laurent_reduce(p, modulus, window)
    assert all(window[0] <= e <= window[1] for e, _ in r.terms)
    # Reducing into a second window and back gives the same representative
    other = window_of(lo + 3, modulus)
    assert laurent_reduce(laurent_reduce(p, modulus, other), modulus, window) == r


def test_reduction_matrix_is_identity_on_its_window():
    m = reduction_matrix(one_minus_t_power(3), (0, 2), (0, 2))
    assert m == m.eye(3)


def test_reduce_large_exponents():
    modulus = product_of([one_minus_t_power(1)] * 2)
    k = 10 ** 12
    # t^e = e t - (e - 1) modulo (1 - t)^2
    assert laurent_reduce(t(k), modulus, (0, 1)) == LaurentPoly.from_dict({1: k, 0: -(k - 1)})
    assert laurent_reduce(t(-k), modulus, (0, 1)) == LaurentPoly.from_dict({1: -k, 0: k + 1})
    cyclic = one_minus_t_power(3)
    assert laurent_reduce(t(EXPONENT_MAX), cyclic, (0, 2)) == t(EXPONENT_MAX % 3)
    assert laurent_reduce(t(EXPONENT_MIN), cyclic, (0, 2)) == t(EXPONENT_MIN % 3)


polys = st.dictionaries(st.integers(-10 ** 9, 10 ** 9), st.integers(-5, 5), max_size=5) \
    .map(LaurentPoly.from_dict)


@settings(max_examples=60, deadline=None)
@given(polys, polys, st.integers(-4, 4), st.integers(-6, 6))
def test_reduce_is_linear_and_kills_multiples(p, q, c, lo):
    modulus = one_minus_t_power(1) * one_minus_t_power(-2)
    window = window_of(lo, modulus)
    left = laurent_reduce(p * c + q, modulus, window)
    assert left == laurent_reduce(p, modulus, window) * c + laurent_reduce(q, modulus, window)
    assert laurent_reduce(p * modulus, modulus, window).is_zero()
