from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from kawasaki.cyclotomic import Cyclotomic, euler_phi, rational_value, root_of_unity
from kawasaki.series import (
    NonUnitSeriesError,
    Series,
    coefficient,
    euler_trace_factor,
    exp_linear,
    todd_factor,
)


def S(*coeffs):
    return Series(list(coeffs))


def sympy_todd(w, t):
    """Taylor coefficients of wH/(1-exp(-wH)) from sympy's series expansion."""
    h = sympy.Symbol("h")
    expr = sympy.series(w * h / (1 - sympy.exp(-w * h)), h, 0, t + 1).removeO()
    return [Fraction(str(expr.coeff(h, d))) for d in range(t + 1)]


def test_exp_linear_examples():
    assert exp_linear(2, 1, 2) == S(1, 2, 2)
    assert exp_linear(0, root_of_unity(3, 1), 5) == Series([root_of_unity(3, 1)], 5)
    assert exp_linear(3, -1, 1) == S(-1, -3)


def test_todd_factor_examples():
    assert todd_factor(1, 2) == S(1, Fraction(1, 2), Fraction(1, 12))
    assert todd_factor(2, 1) == S(1, 1)
    assert todd_factor(1, 0) == S(1)


@pytest.mark.parametrize("w", [1, 2, 3, 5])
def test_todd_factor_matches_sympy(w):
    assert [rational_value(c) for c in todd_factor(w, 6).coeffs] == sympy_todd(w, 6)


def test_euler_trace_factor_examples():
    assert euler_trace_factor(1, -1, 0) == S(2)
    assert euler_trace_factor(1, 1, 1) == S(0, 1)
    assert euler_trace_factor(2, root_of_unity(3, 1), 0) == S(1 - root_of_unity(3, 1))


def test_series_op_examples():
    assert S(1, 1, 0).invert() == S(1, -1, 1)
    assert S(1, 1) * S(1, -1) == S(1, 0)
    with pytest.raises(NonUnitSeriesError, match="non-unit series"):
        Series([0, 1]).invert()


def test_coefficient_examples():
    assert coefficient(S(1, 2, 2), 2) == 2
    assert coefficient(todd_factor(1, 2), 2) == Fraction(1, 12)
    s = S(7, 1, 3)
    assert coefficient(s, 0) == 7
    with pytest.raises(IndexError):
        coefficient(s, 3)


def test_mixed_truncations_take_the_smaller():
    assert (S(1, 1, 1) * S(1, 1)).truncation == 1
    assert (S(1, 1, 1) + S(1, 1)).truncation == 1


small_q = st.fractions(min_value=-4, max_value=4, max_denominator=5)


@st.composite
def unit_series(draw, max_t=6):
    t = draw(st.integers(0, max_t))
    coeffs = []
    for d in range(t + 1):
        coords = draw(st.lists(small_q, min_size=euler_phi(6), max_size=euler_phi(6)))
        coeffs.append(Cyclotomic(6, coords))
    if coeffs[0].is_zero():
        coeffs[0] = Cyclotomic(6, [1, 0])
    return Series(coeffs, t)


@given(unit_series())
def test_invert_is_exact(s):
    assert s * s.invert() == Series.constant(1, s.truncation)


@given(st.integers(-5, 5), st.integers(-5, 5), st.integers(0, 6))
def test_exp_is_additive(a, b, t):
    assert exp_linear(a, 1, t) * exp_linear(b, 1, t) == exp_linear(a + b, 1, t)


@pytest.mark.parametrize("w", range(1, 9))
def test_todd_coefficients_are_rational(w):
    for t in range(9):
        assert all(rational_value(c) is not None for c in todd_factor(w, t).coeffs)


@given(unit_series(max_t=5), unit_series(max_t=5), st.integers(0, 5))
def test_truncation_coherence(s, u, t_small):
    t = min(s.truncation, u.truncation)
    t_small = min(t_small, t)
    deep = (s * u).truncate(t_small)
    shallow = s.truncate(t_small) * u.truncate(t_small)
    assert deep == shallow
    assert s.invert().truncate(t_small) == s.truncate(t_small).invert()
    assert todd_factor(3, t).truncate(t_small) == todd_factor(3, t_small)
