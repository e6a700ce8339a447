#!/usr/bin/env python3
"""Test integer linear algebra helpers"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy import Rational

from engine.lattice import (as_int_matrix, exgcd, hermite_rows, integer_det,
                            kernel, normal_form, primitive, rank, rational_to_primitive, smith_invariants)

small_ints = st.integers(-20, 20)
small_matrices = st.integers(1, 3).flatmap(
    lambda rows: st.integers(1, 4).flatmap(
        lambda cols: st.lists(st.lists(st.integers(-6, 6), min_size=cols, max_size=cols),
                              min_size=rows, max_size=rows)))


@given(small_ints, small_ints)
@settings(max_examples=300, deadline=None)
def test_exgcd_is_unimodular(a, b):
    M = exgcd(a, b)
    assert M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0] == 1
    out = M @ np.array([a, b], dtype=object)
    assert abs(out[0]) == np.gcd(a, b)
    assert out[1] == 0


def test_exgcd_divisible_case():
    M = exgcd(3, 12)
    assert M[0, 1] == 0
    assert list(M @ np.array([3, 12], dtype=object)) == [3, 0]


@given(small_matrices)
@settings(max_examples=150, deadline=None)
def test_normal_form_reconstructs(rows):
    A = as_int_matrix(rows)
    S, D, T, Tinv = normal_form(A)
    assert (S @ D @ T == A).all()
    assert (Tinv @ T == np.eye(A.shape[1], dtype=object)).all()
    off_diagonal = [D[i, j] for i in range(D.shape[0]) for j in range(D.shape[1]) if i != j]
    assert all(x == 0 for x in off_diagonal)


@given(small_matrices)
@settings(max_examples=150, deadline=None)
def test_kernel_is_annihilated(rows):
    A = as_int_matrix(rows)
    K = kernel(A)
    assert K.shape[1] == A.shape[1] - rank(A)
    if K.shape[1]:
        assert (A @ K == 0).all()


def test_kernel_of_square_rays():
    K = kernel([[1, 0, -1, 0], [0, 1, 0, -1]])
    assert K.shape == (4, 2)
    assert hermite_rows(K.T).tolist() == [[1, 0, 1, 0], [0, 1, 0, 1]]


def test_hermite_rows():
    assert hermite_rows([[2, 4], [1, 1]]).tolist() == [[1, 1], [0, 2]]
    assert hermite_rows([[1, 1], [2, 2]]).tolist() == [[1, 1]]


def test_smith_invariants():
    assert smith_invariants([[2, 0], [0, 3]]) == [1, 6]
    assert smith_invariants([[1, 0], [0, 1], [-1, -1]]) == [1, 1]
    assert smith_invariants([[2], [-2]]) == [2]


@pytest.mark.parametrize("vector, expected", [
    ((4, -6), (2, -3)),
    ((0, 5), (0, 1)),
    ((0, 0), (0, 0)),
    ((-3,), (-1,)),
])
def test_primitive(vector, expected):
    assert primitive(vector) == expected


def test_rational_to_primitive():
    assert rational_to_primitive([Rational(1, 2), Rational(-1, 3)]) == (3, -2)
    assert rational_to_primitive([Rational(2, 3)]) == (1,)


def test_integer_det():
    assert integer_det([[1, 2], [3, 4]]) == -2
    assert integer_det([[0, 1], [1, 0]]) == -1


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
