"""Exact sparse Laurent polynomials with rational coefficients."""

from fractions import Fraction
from math import lcm
from numbers import Integral, Rational
from types import MappingProxyType
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import DimensionMismatchError, EvaluationError

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction, float, complex]


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Integral):
        return Fraction(int(value))
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"coefficients must be exact rationals, got {type(value).__name__}")


class LaurentPolynomial:
    """A finite map from integer exponent vectors to nonzero rational coefficients.

    Values are immutable. Terms are kept in lexicographic order of exponents so
    iteration and serialization are deterministic. The zero polynomial has an
    empty term map; the dimension ``n`` is always carried explicitly.
    """

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Optional[Mapping[Sequence[int], Scalar]] = None):
        if n < 1:
            raise ValueError(f"need at least one variable, got n={n}")
        cleaned: Dict[Exponent, Fraction] = {}
        for exponent, coeff in (terms or {}).items():
            m = tuple(int(e) for e in exponent)
            if len(m) != n:
                raise DimensionMismatchError(
                    f"exponent {m} has length {len(m)}, expected {n}"
                )
            c = _as_fraction(coeff)
            if c:
                cleaned[m] = cleaned.get(m, Fraction(0)) + c
        self.n = n
        self._terms = MappingProxyType(
            {m: cleaned[m] for m in sorted(cleaned) if cleaned[m]}
        )
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "LaurentPolynomial":
        return cls(n)

    @classmethod
    def constant(cls, n: int, value: Scalar = 1) -> "LaurentPolynomial":
        return cls(n, {(0,) * n: value})

    @classmethod
    def variable(cls, n: int, index: int) -> "LaurentPolynomial":
        return cls.monomial(n, tuple(1 if i == index else 0 for i in range(n)))

    @classmethod
    def monomial(cls, n: int, exponent: Sequence[int], coeff: Scalar = 1) -> "LaurentPolynomial":
        return cls(n, {tuple(exponent): coeff})

    @classmethod
    def _trusted(cls, n: int, terms: Dict[Exponent, Fraction]) -> "LaurentPolynomial":
        # Skips validation; callers pass well-formed, zero-free maps.
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = MappingProxyType({m: terms[m] for m in sorted(terms)})
        obj._hash = None
        return obj

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return self._terms

    def items(self) -> Iterator[Tuple[Exponent, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def support(self) -> frozenset:
        return frozenset(self._terms)

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exponent), Fraction(0))

    def is_polynomial(self) -> bool:
        """True when no exponent is negative."""
        return all(e >= 0 for m in self._terms for e in m)

    def degree_in(self, index: int) -> int:
        return max((m[index] for m in self._terms), default=0)

    def total_degree(self) -> int:
        return max((sum(m) for m in self._terms), default=0)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "LaurentPolynomial") -> None:
        if not isinstance(other, LaurentPolynomial):
            raise TypeError(f"expected LaurentPolynomial, got {type(other).__name__}")
        if other.n != self.n:
            raise DimensionMismatchError(
                f"cannot combine polynomials in {self.n} and {other.n} variables"
            )

    def add(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            total = out.get(m, 0) + c
            if total:
                out[m] = total
            else:
                out.pop(m, None)
        return LaurentPolynomial._trusted(self.n, out)

    def neg(self) -> "LaurentPolynomial":
        return LaurentPolynomial._trusted(self.n, {m: -c for m, c in self._terms.items()})

    def sub(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        self._check(other)
        return self.add(other.neg())

    def scale(self, factor: Scalar) -> "LaurentPolynomial":
        f = _as_fraction(factor)
        if not f:
            return LaurentPolynomial(self.n)
        return LaurentPolynomial._trusted(self.n, {m: f * c for m, c in self._terms.items()})

    def mul(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return LaurentPolynomial(self.n)
        # Clear denominators so the convolution runs over Python ints.
        left_scale, left = self._integer_terms()
        right_scale, right = other._integer_terms()
        acc: Dict[Exponent, int] = {}
        for m1, c1 in left:
            for m2, c2 in right:
                m = tuple(a + b for a, b in zip(m1, m2))
                acc[m] = acc.get(m, 0) + c1 * c2
        denom = left_scale * right_scale
        out = {m: Fraction(c, denom) for m, c in acc.items() if c}
        return LaurentPolynomial._trusted(self.n, out)

    def _integer_terms(self) -> Tuple[int, List[Tuple[Exponent, int]]]:
        scale = lcm(*(c.denominator for c in self._terms.values()))
        return scale, [(m, int(c * scale)) for m, c in self._terms.items()]

    def pow(self, k: int) -> "LaurentPolynomial":
        if k < 0:
            raise ValueError(f"power must be nonnegative, got {k}")
        for result in self.powers(k):
            pass
        return result

    def powers(self, k_max: int) -> Iterator["LaurentPolynomial"]:
        """Yield p^0, p^1, ..., p^k_max, each built from the previous one."""
        current = LaurentPolynomial.constant(self.n)
        yield current
        for _ in range(k_max):
            current = current.mul(self)
            yield current

    def derivative(self, index: int) -> "LaurentPolynomial":
        """Formal partial derivative with respect to variable ``index``."""
        out: Dict[Exponent, Fraction] = {}
        for m, c in self._terms.items():
            if m[index]:
                shifted = list(m)
                shifted[index] -= 1
                out[tuple(shifted)] = c * m[index]
        return LaurentPolynomial._trusted(self.n, out)

    # -- evaluation -------------------------------------------------------

    def evaluate(self, point: Sequence[Scalar]) -> Scalar:
        """Evaluate at a point; exact when every coordinate is rational."""
        if len(point) != self.n:
            raise DimensionMismatchError(
                f"point has {len(point)} coordinates, expected {self.n}"
            )
        exact = all(isinstance(x, Rational) for x in point)
        coords = [_exact_coordinate(x) if exact else x for x in point]
        total = Fraction(0) if exact else 0.0
        for m, c in self._terms.items():
            term = c if exact else float(c)
            for x, e in zip(coords, m):
                if e == 0:
                    continue
                if e < 0 and x == 0:
                    raise EvaluationError(
                        f"zero coordinate raised to negative power {e}"
                    )
                term = term * x ** e
            total = total + term
        return total

    def to_arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        """Exponent matrix (terms x n) and float coefficient vector."""
        if self.is_zero():
            return np.zeros((0, self.n), dtype=np.int64), np.zeros(0)
        exps = np.array(list(self._terms.keys()), dtype=np.int64)
        coeffs = np.array([float(c) for c in self._terms.values()])
        return exps, coeffs

    def evaluate_array(self, points: np.ndarray) -> np.ndarray:
        """Vectorised float/complex evaluation at each row of ``points``."""
        points = np.atleast_2d(points)
        exps, coeffs = self.to_arrays()
        if not len(coeffs):
            return np.zeros(points.shape[0], dtype=points.dtype)
        with np.errstate(divide="ignore", invalid="ignore"):
            monomials = np.prod(points[:, None, :] ** exps[None, :, :], axis=2)
        return monomials @ coeffs

    # -- dunder -----------------------------------------------------------

    def __add__(self, other):
        return self.add(_coerce(other, self.n))

    __radd__ = __add__

    def __sub__(self, other):
        return self.sub(_coerce(other, self.n))

    def __rsub__(self, other):
        return _coerce(other, self.n).sub(self)

    def __mul__(self, other):
        return self.mul(_coerce(other, self.n))

    __rmul__ = __mul__

    def __neg__(self):
        return self.neg()

    def __pow__(self, k: int):
        return self.pow(k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.n == other.n and dict(self._terms) == dict(other._terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, tuple(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{m}: {c}" for m, c in self._terms.items())
        return f"LaurentPolynomial(n={self.n}, {{{body}}})"


def _exact_coordinate(x) -> Fraction:
    return _as_fraction(x)


def _coerce(value, n: int) -> LaurentPolynomial:
    if isinstance(value, LaurentPolynomial):
        return value
    return LaurentPolynomial.constant(n, value)


def add(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial:
    return p.add(q)


def mul(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial:
    return p.mul(q)


def power(p: LaurentPolynomial, k: int) -> LaurentPolynomial:
    return p.pow(k)


def evaluate(p: LaurentPolynomial, point: Sequence[Scalar]) -> Scalar:
    return p.evaluate(point)


def support(p: LaurentPolynomial) -> frozenset:
    return p.support()
