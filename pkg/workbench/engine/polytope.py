"""Exact lattice-polytope computations: hull, facet presentation, lattice points, smoothness.

Qhull (scipy.spatial.ConvexHull) proposes the facet hyperplanes; every normal
is then recomputed exactly from integer points, made primitive, oriented
inward and its offset taken as an exact minimum. Vertices and edges are read
off from exact facet incidences, so the floating-point hull only ever chooses
candidates.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial import ConvexHull
from sympy import Matrix

from .errors import NotFullDimensionalError, ZeroPolynomialError
from .laurent import Exponent, LaurentPolynomial
from .lattice import integer_det, kernel, primitive, rank, rational_to_primitive

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Facet:
    """Supporting inequality <m, normal> >= -offset with a primitive inward normal."""

    normal: Tuple[int, ...]
    offset: int

    def slack(self, m: Sequence[int]) -> int:
        return sum(u * x for u, x in zip(self.normal, m)) + self.offset

    def to_dict(self) -> Dict:
        return {"u": list(self.normal), "a": self.offset}


def facet_order_key(facet: Facet):
    """Deterministic ray order: fewer negative entries first, then |u| and u descending."""
    u = facet.normal
    return (sum(1 for x in u if x < 0),
            tuple(-abs(x) for x in u),
            tuple(-x for x in u),
            facet.offset)


@dataclass(frozen=True)
class SmoothnessResult:
    smooth: bool
    vertex: Optional[Exponent] = None
    det: Optional[int] = None
    edge_count: Optional[int] = None

    def __bool__(self):
        return self.smooth

    def to_dict(self) -> Dict:
        data = {"smooth": self.smooth}
        if not self.smooth:
            data.update({"vertex": list(self.vertex), "det": self.det,
                         "edge_count": self.edge_count})
        return data


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of finitely many lattice points in Z^n.

    ``facets`` is the irredundant facet presentation when the polytope is
    full-dimensional and empty otherwise. Lower-dimensional polytopes keep the
    integer equations of their affine hull plus a full-dimensional image under
    a coordinate projection that is injective on that hull.
    """

    n: int
    vertices: Tuple[Exponent, ...]
    facets: Tuple[Facet, ...] = ()
    dimension: int = 0
    hull_equations: Tuple[Tuple[Tuple[int, ...], int], ...] = ()
    projection_axes: Tuple[int, ...] = ()
    projected: Optional["LatticePolytope"] = field(default=None, compare=False)

    @property
    def is_full_dimensional(self) -> bool:
        return self.dimension == self.n

    def tight_facets(self, point: Sequence[int]) -> List[int]:
        return [i for i, f in enumerate(self.facets) if f.slack(point) == 0]

    def contains(self, m: Sequence[int]) -> bool:
        m = tuple(m)
        if len(m) != self.n:
            return False
        if self.is_full_dimensional:
            return all(f.slack(m) >= 0 for f in self.facets)
        if any(sum(w * x for w, x in zip(eq, m)) != c for eq, c in self.hull_equations):
            return False
        if self.dimension == 0:
            return m == self.vertices[0]
        return self.projected.contains(tuple(m[i] for i in self.projection_axes))

    @cached_property
    def edges(self) -> Tuple[Tuple[Exponent, Exponent], ...]:
        """Vertex pairs joined by an edge, each pair in lex order."""
        if self.dimension < 1:
            return ()
        if self.dimension == 1:
            return (tuple(self.vertices),)
        if not self.is_full_dimensional:
            # Edges of the projected polytope lift back through the injective projection.
            lift = {tuple(v[i] for i in self.projection_axes): v for v in self.vertices}
            return tuple((lift[a], lift[b]) for a, b in self.projected.edges)
        tight = {v: set(self.tight_facets(v)) for v in self.vertices}
        out = []
        for v, w in itertools.combinations(self.vertices, 2):
            common = tight[v] & tight[w]
            if len(common) >= self.n - 1 and rank([self.facets[i].normal for i in common]) == self.n - 1:
                out.append((v, w))
        return tuple(out)

    def lattice_points(self) -> List[Exponent]:
        return lattice_points(self)

    def dilate(self, k: int) -> "LatticePolytope":
        return dilate(self, k)

    def to_dict(self) -> Dict:
        data = {
            "n": self.n,
            "dimension": self.dimension,
            "vertices": [list(v) for v in self.vertices],
        }
        if self.is_full_dimensional:
            data["facets"] = [f.to_dict() for f in self.facets]
        return data


def affine_dimension_of(points: Sequence[Sequence[int]]) -> int:
    points = [tuple(p) for p in points]
    if len(points) <= 1:
        return 0
    base = points[0]
    return rank([[x - b for x, b in zip(p, base)] for p in points[1:]])


def _exact_facet(points: Sequence[Exponent], simplex: Sequence[int], centroid: Sequence[Fraction]) -> Facet:
    base = points[simplex[0]]
    diffs = [[x - b for x, b in zip(points[j], base)] for j in simplex[1:]]
    null = Matrix(diffs).nullspace()
    if len(null) != 1:
        raise ArithmeticError(f"degenerate hull facet through {[points[j] for j in simplex]}")
    u = rational_to_primitive(list(null[0]))
    if sum(Fraction(ui) * (c - b) for ui, c, b in zip(u, centroid, base)) < 0:
        u = tuple(-x for x in u)
    offset = -min(sum(ui * x for ui, x in zip(u, p)) for p in points)
    return Facet(u, offset)


def _full_dimensional_facets(points: List[Exponent], n: int) -> List[Facet]:
    if n == 1:
        lo, hi = points[0][0], points[-1][0]
        return [Facet((1,), -lo), Facet((-1,), hi)]
    hull = ConvexHull(np.array(points, dtype=float))
    centroid = [Fraction(sum(p[i] for p in points), len(points)) for i in range(n)]
    facets = {_exact_facet(points, simplex, centroid) for simplex in hull.simplices}
    # Qhull can split a facet into several simplices; keep genuine facets only.
    genuine = []
    for f in facets:
        on = [p for p in points if f.slack(p) == 0]
        if affine_dimension_of(on) == n - 1:
            genuine.append(f)
    return sorted(genuine, key=facet_order_key)


def _vertices_from_facets(points: Iterable[Exponent], facets: Sequence[Facet], n: int) -> List[Exponent]:
    out = []
    for p in points:
        tight = [f.normal for f in facets if f.slack(p) == 0]
        if len(tight) >= n and rank(tight) == n:
            out.append(p)
    return sorted(set(out))


def convex_hull(points: Iterable[Sequence[int]], n: int) -> LatticePolytope:
    """Exact convex hull of lattice points in Z^n."""
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if not pts:
        raise ValueError("convex hull of an empty point set")
    dim = affine_dimension_of(pts)
    if dim == n:
        facets = _full_dimensional_facets(pts, n)
        vertices = _vertices_from_facets(pts, facets, n)
        logger.debug("hull of %d points: %d vertices, %d facets", len(pts), len(vertices), len(facets))
        return LatticePolytope(n=n, vertices=tuple(vertices), facets=tuple(facets), dimension=n)
    if dim == 0:
        eqs = tuple((tuple(1 if j == i else 0 for j in range(n)), pts[0][i]) for i in range(n))
        return LatticePolytope(n=n, vertices=(pts[0],), dimension=0, hull_equations=eqs)

    base = pts[0]
    diffs = [[x - b for x, b in zip(p, base)] for p in pts[1:]]
    normals = kernel(diffs)
    eqs = []
    for col in range(normals.shape[1]):
        w = primitive([int(x) for x in normals[:, col]])
        eqs.append((w, sum(a * b for a, b in zip(w, base))))
    _, pivots = Matrix(diffs).rref()
    axes = tuple(pivots)
    projected = convex_hull([tuple(p[i] for i in axes) for p in pts], dim)
    keep = set(projected.vertices)
    vertices = tuple(p for p in pts if tuple(p[i] for i in axes) in keep)
    return LatticePolytope(n=n, vertices=vertices, dimension=dim,
                           hull_equations=tuple(eqs), projection_axes=axes,
                           projected=projected)


def newton_polytope(p: LaurentPolynomial) -> LatticePolytope:
    """Convex hull of the support of ``p``."""
    if p.is_zero():
        raise ZeroPolynomialError("the zero polynomial has no Newton polytope")
    return convex_hull(p.support(), p.n)


def from_facets(n: int, facets: Sequence[Facet]) -> LatticePolytope:
    """Rebuild a full-dimensional lattice polytope from its facet presentation."""
    candidates = set()
    for chosen in itertools.combinations(facets, n):
        A = Matrix([list(f.normal) for f in chosen])
        if A.det() == 0:
            continue
        b = Matrix([-f.offset for f in chosen])
        sol = A.LUsolve(b)
        if all(x.is_integer for x in sol):
            point = tuple(int(x) for x in sol)
            if all(f.slack(point) >= 0 for f in facets):
                candidates.add(point)
    return convex_hull(candidates, n)


def facet_presentation(P: LatticePolytope) -> List[Tuple[Tuple[int, ...], int]]:
    if not P.is_full_dimensional:
        raise NotFullDimensionalError(P.dimension, P.n)
    return [(f.normal, f.offset) for f in P.facets]


def affine_dimension(P: LatticePolytope) -> int:
    return P.dimension


def _bounding_grid(vertices: Sequence[Exponent], n: int) -> np.ndarray:
    V = np.array(vertices, dtype=np.int64)
    lo, hi = V.min(axis=0), V.max(axis=0)
    axes = [np.arange(lo[i], hi[i] + 1) for i in range(n)]
    return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n)


def lattice_points(P: LatticePolytope) -> List[Exponent]:
    """All m in Z^n satisfying the polytope's inequalities, by bounding box and filter."""
    if P.dimension == 0:
        return [P.vertices[0]]
    grid = _bounding_grid(P.vertices, P.n)
    if P.is_full_dimensional:
        U = np.array([f.normal for f in P.facets], dtype=np.int64)
        a = np.array([f.offset for f in P.facets], dtype=np.int64)
        mask = np.all(grid @ U.T + a >= 0, axis=1)
        return sorted(tuple(int(x) for x in row) for row in grid[mask])
    mask = np.ones(len(grid), dtype=bool)
    for w, c in P.hull_equations:
        mask &= grid @ np.array(w, dtype=np.int64) == c
    inside = set(P.projected.lattice_points())
    return sorted(tuple(int(x) for x in row) for row in grid[mask]
                  if tuple(int(row[i]) for i in P.projection_axes) in inside)


def dilate(P: LatticePolytope, k: int) -> LatticePolytope:
    """k * P: vertices and offsets scale by k, normals are unchanged."""
    if k < 1:
        raise ValueError(f"dilation factor must be positive, got {k}")
    return LatticePolytope(
        n=P.n,
        vertices=tuple(tuple(k * x for x in v) for v in P.vertices),
        facets=tuple(Facet(f.normal, k * f.offset) for f in P.facets),
        dimension=P.dimension,
        hull_equations=tuple((w, k * c) for w, c in P.hull_equations),
        projection_axes=P.projection_axes,
        projected=dilate(P.projected, k) if P.projected is not None else None,
    )


def minkowski_sum(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    sums = {tuple(a + b for a, b in zip(v, w)) for v in P.vertices for w in Q.vertices}
    return convex_hull(sums, P.n)


def vertex_edge_neighbors(P: LatticePolytope, v: Sequence[int]) -> List[Exponent]:
    """For each edge at vertex v, the lattice point v + (primitive edge direction)."""
    v = tuple(v)
    if v not in P.vertices:
        raise ValueError(f"{v} is not a vertex")
    out = []
    for a, b in P.edges:
        if v in (a, b):
            w = b if v == a else a
            step = primitive([y - x for x, y in zip(v, w)])
            out.append(tuple(x + s for x, s in zip(v, step)))
    return sorted(out)


def is_smooth(P: LatticePolytope) -> SmoothnessResult:
    """Whether the primitive edge directions at every vertex form a basis of Z^n."""
    if not P.is_full_dimensional:
        raise NotFullDimensionalError(P.dimension, P.n)
    for v in P.vertices:
        neighbors = vertex_edge_neighbors(P, v)
        if len(neighbors) != P.n:
            return SmoothnessResult(False, v, None, len(neighbors))
        det = abs(integer_det([[w - x for w, x in zip(nb, v)] for nb in neighbors]))
        if det != 1:
            return SmoothnessResult(False, v, det, P.n)
    return SmoothnessResult(True)
