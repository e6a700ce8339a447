#!/usr/bin/env python3
"""Test homogenization along the normal fan and chart restrictions"""

import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import numpy as np
import pytest

from engine.errors import FanMismatchError
from engine.expr_parser import parse_expression
from engine.fan_group import build_normal_fan, e_sigma, positive_group_element, relation_lattice, unitary_group_element
from engine.homogenize import (chart_restriction, character_chi_L, check_functional_equation, evaluate_homog,
                               exponent_of, homogenize, polarized_eval, restrict_to_chart)
from engine.laurent import LaurentPolynomial
from engine.polytope import newton_polytope

P77 = "((1+x1)^4 - 7*x1^2) * ((1+x2)^4 - 7*x2^2)"


def setup(text, variables):
    p = parse_expression(text, variables)
    P = newton_polytope(p)
    fan = build_normal_fan(P)
    return p, fan, homogenize(p, P, fan)


def z(n):
    return [f"z{i}" for i in range(n)]


def test_simplex_homogenizes_to_linear_form():
    _, fan, ph = setup("1 + x1 + x2", ["x1", "x2"])
    assert ph.polynomial == parse_expression("z0 + z1 + z2", z(3))


def test_projective_line():
    _, fan, ph = setup("1 + x1^2", ["x1"])
    assert ph.polynomial == parse_expression("z0^2 + z1^2", z(2))
    assert exponent_of(fan, (1,)) == (1, 1)


def test_laurent_segment():
    _, fan, ph = setup("x1^-1 + 1 + x1", ["x1"])
    assert [(r.normal, r.offset) for r in fan.rays] == [((1,), 1), ((-1,), 1)]
    assert ph.polynomial == parse_expression("z1^2 + z0*z1 + z0^2", z(2))


def test_terms_stay_indexed_by_lattice_point():
    p, _, ph = setup(P77, ["x1", "x2"])
    assert len(ph.terms) == len(p)
    assert ph.coefficient_at((2, 0)) == -1
    assert ph.coefficient_at((2, 2)) == 1
    assert ph.coefficient_at((5, 5)) == 0
    for term in ph.terms:
        assert term.exponent == exponent_of(ph.fan, term.m)


def test_vertex_values_are_vertex_coefficients():
    p, fan, ph = setup(P77, ["x1", "x2"])
    for cone in fan.cones:
        assert evaluate_homog(ph, list(e_sigma(fan, cone))) == p.coefficient(cone.vertex)


def test_mismatched_fan_is_rejected():
    p, fan, _ = setup("1 + x1 + x2", ["x1", "x2"])
    bigger = newton_polytope(parse_expression("1 + x1^2 + x2^2", ["x1", "x2"]))
    with pytest.raises(FanMismatchError):
        homogenize(p, bigger, fan)
    with pytest.raises(FanMismatchError):
        homogenize(LaurentPolynomial(1, {(0,): 1}), newton_polytope(p), fan)


def test_full_chart_restriction_is_affine_dehomogenization():
    p, fan, ph = setup(P77, ["x1", "x2"])
    # Chart at the origin vertex: s = (x1, x2).
    assert chart_restriction(ph, fan.cones[0]) == p
    # Chart at (4, 4): s = (1/x1, 1/x2), f(s) = s1^4 s2^4 p(1/s1, 1/s2) = p by symmetry.
    assert chart_restriction(ph, fan.cones[3]) == p


def test_partial_restriction_zeroes_slots():
    p, fan, ph = setup("1 + x1 + x2", ["x1", "x2"])
    cone = fan.cones[0]
    # tau puts s on the second chart slot and zeroes the first: z = (0, s, 1).
    f = restrict_to_chart(ph.polynomial, fan, cone, tau=[1, 0], ell=1)
    assert f == parse_expression("1 + x1", ["x1"])
    with pytest.raises(ValueError):
        restrict_to_chart(ph.polynomial, fan, cone, tau=[0, 0], ell=1)
    with pytest.raises(ValueError):
        restrict_to_chart(ph.polynomial, fan, cone, ell=3)


def test_character():
    _, fan, _ = setup(P77, ["x1", "x2"])
    assert character_chi_L(fan, [Fraction(2), Fraction(3), Fraction(2), Fraction(3)]) == 2 ** 4 * 3 ** 4


def test_polarized_eval_on_diagonal():
    _, _, ph = setup("1 + x1 + x2", ["x1", "x2"])
    w = np.array([1 + 1j, 2.0, -1j])
    assert polarized_eval(ph, w, w) == pytest.approx(np.sum(np.abs(w) ** 2))


@pytest.mark.parametrize("text, variables", [
    ("1 + x1 + x2", ["x1", "x2"]),
    ("1 + x1^2", ["x1"]),
    (P77, ["x1", "x2"]),
    ("x1^-1 + 1 + x1 + x2 + x1*x2", ["x1", "x2"]),
])
def test_functional_equation(text, variables):
    _, fan, ph = setup(text, variables)
    lattice = relation_lattice(fan)
    rng = np.random.default_rng(11)
    R = fan.ray_count
    worst = 0.0
    for trial in range(1000):
        if trial % 2:
            # Exact: rational positive g built from rational parameters.
            t = [Fraction(int(rng.integers(1, 9)), int(rng.integers(1, 9))) for _ in range(lattice.rank)]
            g = [Fraction(1)] * R
            for tj, row in zip(t, lattice.basis):
                g = [gi * tj ** b for gi, b in zip(g, row)]
            point = [Fraction(int(rng.integers(0, 5)), int(rng.integers(1, 5))) for _ in range(R)]
            assert check_functional_equation(ph, g, point) == 0
        else:
            g = (positive_group_element(lattice, rng.uniform(-0.5, 0.5, lattice.rank))
                 * unitary_group_element(lattice, rng.uniform(0, 2 * np.pi, lattice.rank)))
            point = rng.uniform(0.5, 1.5, R) * np.exp(2j * np.pi * rng.random(R))
            worst = max(worst, check_functional_equation(ph, list(g), list(point)))
    assert worst <= 1e-9


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
