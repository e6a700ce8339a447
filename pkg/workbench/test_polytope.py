#!/usr/bin/env python3
"""Test Newton polytopes, facet presentations and the smoothness gate"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest
from hypothesis import given, settings, strategies as st

from engine.errors import NotFullDimensionalError, ZeroPolynomialError
from engine.expr_parser import parse_expression
from engine.laurent import LaurentPolynomial
from engine.polytope import (affine_dimension, convex_hull, dilate, facet_presentation, from_facets, is_smooth,
                             lattice_points, minkowski_sum, newton_polytope, vertex_edge_neighbors)


def support_polytope(points, n=2):
    return newton_polytope(LaurentPolynomial(n, {tuple(m): 1 for m in points}))


@pytest.fixture
def square():
    return newton_polytope(parse_expression("((1+x1)^4 - 7*x1^2) * ((1+x2)^4 - 7*x2^2)", ["x1", "x2"]))


@pytest.fixture
def simplex():
    return newton_polytope(parse_expression("1 + x1 + x2", ["x1", "x2"]))


def test_square_facets_in_ray_order(square):
    assert square.vertices == ((0, 0), (0, 4), (4, 0), (4, 4))
    assert facet_presentation(square) == [((1, 0), 0), ((0, 1), 0), ((-1, 0), 4), ((0, -1), 4)]
    assert len(square.edges) == 4


def test_simplex_facets(simplex):
    assert simplex.vertices == ((0, 0), (0, 1), (1, 0))
    assert facet_presentation(simplex) == [((1, 0), 0), ((0, 1), 0), ((-1, -1), 1)]


def test_segment_in_one_variable():
    P = newton_polytope(parse_expression("1 + x1^2", ["x1"]))
    assert P.vertices == ((0,), (2,))
    assert facet_presentation(P) == [((1,), 0), ((-1,), 2)]
    assert lattice_points(P) == [(0,), (1,), (2,)]


def test_interior_support_points_are_not_vertices():
    P = support_polytope([(0, 0), (2, 0), (0, 2), (1, 1), (1, 0)])
    assert P.vertices == ((0, 0), (0, 2), (2, 0))


def test_lower_dimensional_polytope():
    P = newton_polytope(parse_expression("1 + x1*x2", ["x1", "x2"]))
    assert P.dimension == 1
    assert affine_dimension(P) == 1
    assert not P.is_full_dimensional
    assert P.contains((0, 0)) and P.contains((1, 1))
    assert not P.contains((1, 0))
    assert lattice_points(P) == [(0, 0), (1, 1)]
    with pytest.raises(NotFullDimensionalError):
        facet_presentation(P)
    with pytest.raises(NotFullDimensionalError):
        is_smooth(P)


def test_single_point():
    P = newton_polytope(parse_expression("3*x1^2*x2", ["x1", "x2"]))
    assert P.dimension == 0
    assert affine_dimension(P) == 0
    assert lattice_points(P) == [(2, 1)]


def test_zero_polynomial_has_no_polytope():
    with pytest.raises(ZeroPolynomialError):
        newton_polytope(LaurentPolynomial.zero(2))


def test_lattice_point_counts(square, simplex):
    assert len(lattice_points(square)) == 25
    assert len(lattice_points(dilate(simplex, 2))) == 6
    assert len(lattice_points(dilate(simplex, 3))) == 10


def test_dilate_scales_offsets(square):
    big = dilate(square, 3)
    assert big.vertices == ((0, 0), (0, 12), (12, 0), (12, 12))
    assert [f.offset for f in big.facets] == [0, 0, 12, 12]
    with pytest.raises(ValueError):
        dilate(square, 0)


def test_minkowski_sum_of_simplices(simplex):
    assert minkowski_sum(simplex, simplex).vertices == dilate(simplex, 2).vertices


def test_from_facets_recovers_vertices(square, simplex):
    for P in (square, simplex):
        assert from_facets(P.n, P.facets).vertices == P.vertices


def test_laurent_support():
    P = newton_polytope(parse_expression("x1^-1 + x2^-1 + x1*x2", ["x1", "x2"]))
    assert set(P.vertices) == {(-1, 0), (0, -1), (1, 1)}
    assert lattice_points(P) == [(-1, 0), (0, -1), (0, 0), (1, 1)]


def test_square_and_simplex_are_smooth(square, simplex):
    assert is_smooth(square)
    assert is_smooth(simplex)
    assert is_smooth(dilate(simplex, 4)).smooth


def test_nonsmooth_triangle_reports_vertex_and_determinant():
    P = support_polytope([(0, 0), (2, 1), (1, 2)])
    result = is_smooth(P)
    assert not result
    assert result.vertex == (0, 0)
    assert result.det == 3
    assert result.to_dict() == {"smooth": False, "vertex": [0, 0], "det": 3, "edge_count": 2}


def test_pyramid_apex_has_too_many_edges():
    P = support_polytope([(0, 0, 0), (2, 0, 0), (0, 2, 0), (2, 2, 0), (1, 1, 1)], n=3)
    assert len(P.facets) == 5
    assert len(vertex_edge_neighbors(P, (1, 1, 1))) == 4
    result = is_smooth(P)
    assert result.vertex == (1, 1, 1)
    assert result.det is None
    assert result.edge_count == 4


def test_cube_is_smooth():
    P = support_polytope([(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)], n=3)
    assert len(P.facets) == 6
    assert is_smooth(P)


@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=8))
@settings(max_examples=150, deadline=None)
def test_support_lies_in_hull(points):
    P = convex_hull(points, 2)
    inside = set(lattice_points(P))
    assert all(tuple(p) in inside for p in points)
    assert set(P.vertices) <= set(tuple(p) for p in points)
    for m in inside:
        assert P.contains(m)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
