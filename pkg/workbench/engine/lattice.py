"""Integer linear algebra: unimodular normal forms, kernels, saturation and Smith invariants.

Matrices are numpy arrays of dtype object so entries stay exact Python ints.
"""

from math import gcd
from typing import List, Sequence, Tuple

import numpy as np
from sympy import Matrix, Rational, ilcm
from sympy.matrices.normalforms import smith_normal_form
from sympy.polys.domains import ZZ


def as_int_matrix(rows) -> np.ndarray:
    arr = np.array(rows, dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    return arr


def exgcd(a: int, b: int) -> np.ndarray:
    """A 2x2 integer matrix M of determinant 1 with M @ [a, b] = [gcd(a, b), 0].

    If a divides b, M[0, 1] is 0.
    """
    if a == 0 and b == 0:
        return np.eye(2, dtype=object)
    a_sign = -1 if a < 0 else 1
    b_sign = -1 if b < 0 else 1
    a, b = a * a_sign, b * b_sign

    # Euclid on the column [a, b], tracking row operations in the augmented identity.
    M = np.array([[b, 0, 1],
                  [a, 1, 0]], dtype=object)
    while M[1, 0] != 0:
        q = M[0, 0] // M[1, 0]
        M[0] -= q * M[1]
        M = M[::-1]

    g = M[0, 0]
    M = M[:, 1:] * np.array([a_sign, b_sign], dtype=object)
    if g != 0:
        M[1] = [-b_sign * b // g, a_sign * a // g]
    return M


def _inv_2x2_det1(M: np.ndarray) -> np.ndarray:
    return np.array([[M[1, 1], -M[0, 1]], [-M[1, 0], M[0, 0]]], dtype=object)


def normal_form(A: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Diagonalize A by unimodular row and column operations.

    Returns (S, D, T, Tinv) with A == S @ D @ T, D diagonal of the same shape as
    A and Tinv @ T == I. There is no divisibility guarantee on the diagonal;
    use smith_invariants for invariant factors.
    """
    A = as_int_matrix(A)
    D = A.copy()
    S = np.eye(D.shape[0], dtype=object)
    T = np.eye(D.shape[1], dtype=object)
    Tinv = T.copy()

    def clear_row(i):
        if (D[i, i + 1:] == 0).all():
            return False
        for j in range(i + 1, D.shape[1]):
            M = exgcd(D[i, i], D[i, j]).T
            D[:, [i, j]] = D[:, [i, j]] @ M
            T[[i, j]] = _inv_2x2_det1(M) @ T[[i, j]]
            Tinv[:, [i, j]] = Tinv[:, [i, j]] @ M
        return True

    def clear_col(i):
        if (D[i + 1:, i] == 0).all():
            return False
        for j in range(i + 1, D.shape[0]):
            M = exgcd(D[i, i], D[j, i])
            D[[i, j]] = M @ D[[i, j]]
            S[:, [i, j]] = S[:, [i, j]] @ _inv_2x2_det1(M)
        return True

    for i in range(min(D.shape)):
        clear_col(i)
        while clear_row(i) and clear_col(i):
            pass

    return S, D, T, Tinv


def _diagonal_mask(D: np.ndarray, length: int) -> np.ndarray:
    diag = np.array([D[i, i] for i in range(min(D.shape))] + [0] * max(0, length - min(D.shape)),
                    dtype=object)
    return diag[:length] == 0


def kernel(A) -> np.ndarray:
    """Columns spanning the integer null space {x : A x = 0}."""
    A = as_int_matrix(A)
    _, D, _, Tinv = normal_form(A)
    return Tinv[:, _diagonal_mask(D, A.shape[1])]


def hermite_rows(B) -> np.ndarray:
    """Row Hermite normal form: echelon rows with positive pivots, entries above reduced.

    Zero rows are dropped, so the result is a canonical basis of the row lattice.
    """
    H = as_int_matrix(B).copy()
    rows, cols = H.shape
    pivot = 0
    for col in range(cols):
        if pivot == rows:
            break
        for i in range(pivot + 1, rows):
            if H[i, col] != 0:
                M = exgcd(H[pivot, col], H[i, col])
                H[[pivot, i]] = M @ H[[pivot, i]]
        if H[pivot, col] == 0:
            continue
        if H[pivot, col] < 0:
            H[pivot] = -H[pivot]
        p = H[pivot, col]
        for i in range(pivot):
            H[i] -= (H[i, col] // p) * H[pivot]
        pivot += 1
    return H[:pivot]


def smith_invariants(A) -> List[int]:
    """Nonzero invariant factors of an integer matrix, in divisibility order."""
    rows = as_int_matrix(A).tolist()
    if not rows or not rows[0]:
        return []
    snf = smith_normal_form(Matrix(rows), domain=ZZ)
    diag = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
    return sorted(d for d in diag if d != 0)


def rank(A) -> int:
    rows = as_int_matrix(A).tolist()
    if not rows or not rows[0]:
        return 0
    return Matrix(rows).rank()


def primitive(vector: Sequence[int]) -> Tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    g = gcd(*(int(v) for v in vector))
    if g == 0:
        return tuple(int(v) for v in vector)
    return tuple(int(v) // g for v in vector)


def rational_to_primitive(vector: Sequence) -> Tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector on the same ray."""
    values = [Rational(v) for v in vector]
    den = ilcm(*(v.q for v in values)) if len(values) > 1 else values[0].q
    ints = [int(v * den) for v in values]
    return primitive(ints)


def integer_det(rows) -> int:
    return int(Matrix(as_int_matrix(rows).tolist()).det())
