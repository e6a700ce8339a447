#!/usr/bin/env python3
"""Test exact Laurent polynomial arithmetic"""

import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from engine.errors import DimensionMismatchError, EvaluationError
from engine.laurent import LaurentPolynomial, add, evaluate, mul, power, support


def poly(n, terms):
    return LaurentPolynomial(n, terms)


def x(i=0, n=1):
    return LaurentPolynomial.variable(n, i)


laurent_2d = st.dictionaries(
    keys=st.tuples(st.integers(-2, 2), st.integers(-2, 2)),
    values=st.integers(-5, 5),
    max_size=6,
).map(lambda terms: LaurentPolynomial(2, terms))

nonzero_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=5).filter(lambda q: q != 0)


def test_zero_coefficients_are_dropped():
    p = poly(1, {(0,): 1, (1,): 0, (2,): Fraction(0)})
    assert p.support() == frozenset({(0,)})
    assert len(p) == 1


def test_terms_are_lex_sorted():
    p = poly(2, {(1, 0): 1, (0, 1): 2, (0, 0): 3})
    assert list(p.terms) == [(0, 0), (0, 1), (1, 0)]


def test_binomial_square():
    one = LaurentPolynomial.constant(1)
    assert (one + x()) ** 2 == poly(1, {(0,): 1, (1,): 2, (2,): 1})


def test_laurent_square():
    p = poly(1, {(-1,): 1, (0,): 1, (1,): 1})
    assert p.pow(2) == poly(1, {(-2,): 1, (-1,): 2, (0,): 3, (1,): 2, (2,): 1})


def test_power_zero_is_one():
    p = poly(2, {(1, -1): 3})
    assert power(p, 0) == LaurentPolynomial.constant(2)


def test_cancellation_gives_zero():
    p = poly(2, {(1, 0): 1, (0, 1): -1})
    assert (p - p).is_zero()
    assert add(p, -p) == LaurentPolynomial.zero(2)


def test_rational_coefficients_survive_multiplication():
    p = poly(1, {(0,): Fraction(1, 2), (1,): Fraction(1, 3)})
    q = mul(p, p)
    assert q.coefficient((0,)) == Fraction(1, 4)
    assert q.coefficient((1,)) == Fraction(1, 3)
    assert q.coefficient((2,)) == Fraction(1, 9)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        x(0, 1) + x(0, 2)
    with pytest.raises(DimensionMismatchError):
        poly(2, {(1,): 1})


def test_exact_evaluation():
    p = poly(2, {(0, 0): 1, (-1, 2): Fraction(1, 2)})
    assert evaluate(p, [Fraction(1, 2), 3]) == 1 + Fraction(1, 2) * 2 * 9


def test_zero_to_negative_power():
    with pytest.raises(EvaluationError):
        poly(1, {(-1,): 1}).evaluate([0])


def test_evaluate_array_matches_exact():
    p = poly(2, {(0, 0): 1, (1, 0): 4, (2, 1): -3, (0, 3): 1})
    points = np.array([[0.5, 2.0], [1.0, 1.0], [3.0, 0.25]])
    values = p.evaluate_array(points)
    for row, value in zip(points, values):
        assert value == pytest.approx(float(p.evaluate([Fraction(v) for v in row])))


def test_derivative():
    p = poly(2, {(3, 1): 2, (0, 1): 5, (-1, 0): 1})
    assert p.derivative(0) == poly(2, {(2, 1): 6, (-2, 0): -1})
    assert p.derivative(1) == poly(2, {(3, 0): 2, (0, 0): 5})


def test_degrees_and_polynomial_flag():
    p = poly(2, {(3, 1): 2, (0, 4): 1})
    assert p.degree_in(0) == 3
    assert p.degree_in(1) == 4
    assert p.total_degree() == 4
    assert p.is_polynomial()
    assert not poly(1, {(-1,): 1}).is_polynomial()


def test_powers_generator_is_incremental():
    p = poly(1, {(0,): 1, (1,): 1})
    seen = list(p.powers(4))
    assert len(seen) == 5
    assert seen[4].coefficient((2,)) == 6


def test_power_and_support():
    p = poly(1, {(0,): 1, (1,): 1})
    assert power(p, 3) == poly(1, {(0,): 1, (1,): 3, (2,): 3, (3,): 1})
    assert support(p) == frozenset({(0,), (1,)})


@given(laurent_2d, laurent_2d)
@settings(max_examples=200, deadline=None)
def test_multiplication_commutes(p, q):
    assert p * q == q * p


@given(laurent_2d, laurent_2d, laurent_2d)
@settings(max_examples=100, deadline=None)
def test_multiplication_associates_and_distributes(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@given(laurent_2d, st.integers(0, 3), st.integers(0, 3))
@settings(max_examples=100, deadline=None)
def test_power_law(p, a, b):
    assert p.pow(a + b) == p.pow(a) * p.pow(b)


@given(laurent_2d, laurent_2d, nonzero_rationals, nonzero_rationals)
@settings(max_examples=200, deadline=None)
def test_evaluation_is_a_ring_homomorphism(p, q, a, b):
    point = [a, b]
    assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)
    assert (p + q).evaluate(point) == p.evaluate(point) + q.evaluate(point)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
