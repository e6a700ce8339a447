"""Homogenization of a Laurent polynomial along the normal fan of its Newton polytope.

Each term c_m x^m becomes c_m prod_rho z_rho^(<m, u_rho> + a_rho). The result
is kept indexed by m so lattice points and homogenized terms stay in bijection.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from numbers import Rational
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import FanMismatchError
from .fan_group import MaxCone, NormalFan
from .laurent import Exponent, LaurentPolynomial
from .polytope import LatticePolytope


@dataclass(frozen=True)
class HomogTerm:
    m: Exponent
    coeff: Fraction
    exponent: Tuple[int, ...]


@dataclass(frozen=True)
class HomogenizedPolynomial:
    fan: NormalFan
    terms: Tuple[HomogTerm, ...]
    source: Optional[LaurentPolynomial] = field(default=None, compare=False)

    @cached_property
    def polynomial(self) -> LaurentPolynomial:
        """p~ expanded as an ordinary polynomial in the ray variables z_rho."""
        return LaurentPolynomial(self.fan.ray_count, {t.exponent: t.coeff for t in self.terms})

    def as_polynomial(self) -> LaurentPolynomial:
        return self.polynomial

    def coefficient_at(self, m: Sequence[int]) -> Fraction:
        m = tuple(m)
        for t in self.terms:
            if t.m == m:
                return t.coeff
        return Fraction(0)

    def partial(self, rho: int) -> LaurentPolynomial:
        return self.polynomial.derivative(rho)

    def evaluate(self, z: Sequence):
        return evaluate_homog(self, z)

    def to_dict(self) -> Dict:
        return {"terms": [{"m": list(t.m), "c": t.coeff, "E": list(t.exponent)}
                          for t in self.terms]}


def exponent_of(fan: NormalFan, m: Sequence[int]) -> Tuple[int, ...]:
    """E(m)_rho = <m, u_rho> + a_rho."""
    return tuple(sum(u * x for u, x in zip(r.normal, m)) + r.offset for r in fan.rays)


def homogenize(p: LaurentPolynomial, P: LatticePolytope, fan: NormalFan) -> HomogenizedPolynomial:
    if p.n != fan.n or P.n != fan.n:
        raise FanMismatchError(f"polynomial in {p.n} variables, fan in dimension {fan.n}")
    if tuple((f.normal, f.offset) for f in P.facets) != tuple((r.normal, r.offset) for r in fan.rays):
        raise FanMismatchError("fan rays do not match the polytope's facet presentation")
    terms = []
    for m, c in p.items():
        E = exponent_of(fan, m)
        if min(E) < 0:
            raise FanMismatchError(f"exponent {m} lies outside the polytope")
        terms.append(HomogTerm(m, c, E))
    return HomogenizedPolynomial(fan, tuple(terms), source=p)


def evaluate_homog(ph: HomogenizedPolynomial, z: Sequence):
    """Sum of c_m prod z_rho^E(m)_rho with 0^0 = 1; exact on rational input."""
    if len(z) != ph.fan.ray_count:
        raise ValueError(f"expected {ph.fan.ray_count} coordinates, got {len(z)}")
    if all(isinstance(x, Rational) for x in z):
        return ph.polynomial.evaluate(list(z))
    return ph.polynomial.evaluate([complex(x) for x in z])


def evaluate_homog_array(ph: HomogenizedPolynomial, Z: np.ndarray) -> np.ndarray:
    return ph.polynomial.evaluate_array(np.asarray(Z))


def polarized_eval(ph: HomogenizedPolynomial, z: Sequence[complex], w: Sequence[complex]) -> complex:
    """P~(z, conj w), i.e. p~ at the coordinatewise product z * conj(w)."""
    zw = np.asarray(z, dtype=complex) * np.conj(np.asarray(w, dtype=complex))
    return complex(ph.polynomial.evaluate(list(zw)))


def _check_permutation(tau: Sequence[int], n: int) -> Tuple[int, ...]:
    tau = tuple(int(t) for t in tau)
    if sorted(tau) != list(range(n)):
        raise ValueError(f"{tau} is not a permutation of 0..{n - 1}")
    return tau


def restrict_to_chart(poly: LaurentPolynomial, fan: NormalFan, cone: MaxCone,
                      tau: Optional[Sequence[int]] = None, ell: Optional[int] = None) -> LaurentPolynomial:
    """poly(phi_sigma(tau(s_1, ..., s_ell, 0, ..., 0))) as a polynomial in s_1..s_ell.

    Chart slot tau[j] carries s_j for j < ell; the other chart slots are 0 and
    coordinates off the cone are 1. Terms touching a zeroed slot drop out.
    """
    n = len(cone.rays)
    ell = n if ell is None else ell
    if not 1 <= ell <= n:
        raise ValueError(f"ell must lie in 1..{n}, got {ell}")
    tau = _check_permutation(range(n) if tau is None else tau, n)
    live = [cone.rays[tau[j]] for j in range(ell)]
    dead = [cone.rays[tau[j]] for j in range(ell, n)]
    out: Dict[Exponent, Fraction] = {}
    for E, c in poly.items():
        if any(E[rho] for rho in dead):
            continue
        key = tuple(E[rho] for rho in live)
        out[key] = out.get(key, 0) + c
    return LaurentPolynomial(ell, out)


def chart_restriction(ph: HomogenizedPolynomial, cone: MaxCone,
                      tau: Optional[Sequence[int]] = None, ell: Optional[int] = None) -> LaurentPolynomial:
    return restrict_to_chart(ph.polynomial, ph.fan, cone, tau, ell)


def character_chi_L(fan: NormalFan, g: Sequence):
    """chi^L(g) = prod_rho g_rho^a_rho."""
    if all(isinstance(x, Rational) for x in g):
        out = Fraction(1)
        for x, a in zip(g, fan.offsets):
            out *= Fraction(x) ** a
        return out
    return complex(np.prod([complex(x) ** a for x, a in zip(g, fan.offsets)]))


def check_functional_equation(ph: HomogenizedPolynomial, g: Sequence, z: Sequence):
    """|p~(g.z) - chi^L(g) p~(z)| / (1 + |p~(z)|); exact when g and z are rational."""
    gz = [a * b for a, b in zip(g, z)]
    lhs = evaluate_homog(ph, gz)
    base = evaluate_homog(ph, z)
    diff = lhs - character_chi_L(ph.fan, g) * base
    return abs(diff) / (1 + abs(base))
