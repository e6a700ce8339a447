"""Normal fan of a smooth polytope, its charts, the irrelevant set and the group G.

Vectors "over Sigma(1)" are indexed by ray position in ``NormalFan.rays``,
which follows the polytope's facet order. G is handled through its relation
lattice {b : sum_rho b_rho u_rho = 0}; the positive slice is exp of its real
span and the unitary slice exp(i * ...) of the same.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ChartError, NonSmoothError, NotFullDimensionalError, TorsionError
from .laurent import Exponent
from .lattice import hermite_rows, integer_det, kernel, smith_invariants
from .polytope import LatticePolytope, is_smooth

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Ray:
    index: int
    normal: Tuple[int, ...]
    offset: int


@dataclass(frozen=True)
class MaxCone:
    """A maximal cone: the sorted ray indices sigma(1) and its vertex of the polytope."""

    index: int
    rays: Tuple[int, ...]
    vertex: Exponent

    def contains_ray(self, rho: int) -> bool:
        return rho in self.rays


@dataclass(frozen=True)
class NormalFan:
    n: int
    rays: Tuple[Ray, ...]
    cones: Tuple[MaxCone, ...]

    @property
    def ray_count(self) -> int:
        return len(self.rays)

    @property
    def ray_matrix(self) -> np.ndarray:
        """|Sigma(1)| x n integer matrix with rows u_rho."""
        return np.array([r.normal for r in self.rays], dtype=np.int64)

    @property
    def offsets(self) -> Tuple[int, ...]:
        return tuple(r.offset for r in self.rays)

    def off_cone(self, cone: MaxCone) -> Tuple[int, ...]:
        return tuple(r.index for r in self.rays if r.index not in cone.rays)

    def cone_for_vertex(self, vertex: Sequence[int]) -> MaxCone:
        vertex = tuple(vertex)
        for cone in self.cones:
            if cone.vertex == vertex:
                return cone
        raise KeyError(f"{vertex} is not a vertex of the polytope")

    def to_dict(self) -> Dict:
        return {
            "rays": [{"index": r.index, "u": list(r.normal), "a": r.offset} for r in self.rays],
            "cones": [{"index": c.index, "rays": list(c.rays), "vertex": list(c.vertex)}
                      for c in self.cones],
        }


@dataclass(frozen=True)
class RelationLattice:
    """Integer relations among the ray normals, in row Hermite normal form."""

    basis: Tuple[Tuple[int, ...], ...]
    ray_count: int

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def matrix(self) -> np.ndarray:
        if not self.basis:
            return np.zeros((0, self.ray_count))
        return np.array(self.basis, dtype=float)

    def to_dict(self) -> Dict:
        return {"basis": [list(b) for b in self.basis], "rank": self.rank}


class OrbitStatus(Enum):
    YES = "Yes"
    NO = "No"
    BORDERLINE = "Borderline"


@dataclass(frozen=True)
class OrbitResult:
    status: OrbitStatus
    residual: float

    @property
    def excluded(self) -> bool:
        return self.status is not OrbitStatus.NO


def build_normal_fan(P: LatticePolytope) -> NormalFan:
    """Rays in facet order and one maximal cone per vertex (vertices in lex order)."""
    if not P.is_full_dimensional:
        raise NotFullDimensionalError(P.dimension, P.n)
    smooth = is_smooth(P)
    if not smooth:
        raise NonSmoothError(smooth.vertex, smooth.det, smooth.edge_count)
    rays = tuple(Ray(i, f.normal, f.offset) for i, f in enumerate(P.facets))
    cones = []
    for index, v in enumerate(P.vertices):
        tight = tuple(P.tight_facets(v))
        det = integer_det([rays[i].normal for i in tight]) if len(tight) == P.n else 0
        if abs(det) != 1:
            raise NonSmoothError(v, abs(det) if len(tight) == P.n else None, len(tight))
        cones.append(MaxCone(index, tight, v))
    logger.debug("normal fan: %d rays, %d maximal cones", len(rays), len(cones))
    return NormalFan(P.n, rays, tuple(cones))


def e_sigma(fan: NormalFan, cone: MaxCone) -> Tuple[int, ...]:
    """The 0/1 point with zeros exactly on sigma(1)."""
    return tuple(0 if r.index in cone.rays else 1 for r in fan.rays)


def in_irrelevant_set(fan: NormalFan, z: Sequence[complex], atol: float = 0.0) -> bool:
    """True iff every maximal cone has a vanishing coordinate off its rays."""
    if len(z) != fan.ray_count:
        raise ValueError(f"expected {fan.ray_count} coordinates, got {len(z)}")
    zero = [abs(x) <= atol for x in z]
    return all(any(zero[rho] for rho in fan.off_cone(cone)) for cone in fan.cones)


def torsion_check(fan: NormalFan) -> List[int]:
    """Invariant factors of Z^{Sigma(1)} / image(M); raises TorsionError unless all are 1."""
    invariants = smith_invariants(fan.ray_matrix.tolist())
    if len(invariants) != fan.n or any(d != 1 for d in invariants):
        raise TorsionError(invariants)
    return invariants


def relation_lattice(fan: NormalFan) -> RelationLattice:
    torsion_check(fan)
    U = fan.ray_matrix.tolist()
    transpose = [[U[r][i] for r in range(fan.ray_count)] for i in range(fan.n)]
    K = kernel(transpose)
    if K.shape[1] == 0:
        return RelationLattice((), fan.ray_count)
    H = hermite_rows(K.T)
    basis = tuple(tuple(int(x) for x in row) for row in H)
    return RelationLattice(basis, fan.ray_count)


def positive_group_element(lattice: RelationLattice, params: Sequence[float]) -> np.ndarray:
    """g_rho = exp(sum_j params_j * basis_j[rho]), a point of G in the open positive orthant."""
    params = np.asarray(params, dtype=float)
    if params.shape != (lattice.rank,):
        raise ValueError(f"expected {lattice.rank} parameters, got {params.shape}")
    if not lattice.rank:
        return np.ones(lattice.ray_count)
    return np.exp(params @ lattice.matrix)


def unitary_group_element(lattice: RelationLattice, angles: Sequence[float]) -> np.ndarray:
    """exp(i * sum_j angles_j * basis_j), a point of G inside U(1)^{Sigma(1)}."""
    angles = np.asarray(angles, dtype=float)
    if not lattice.rank:
        return np.ones(lattice.ray_count, dtype=complex)
    return np.exp(1j * (angles @ lattice.matrix))


def random_unitary_group_element(lattice: RelationLattice, rng: np.random.Generator) -> np.ndarray:
    return unitary_group_element(lattice, rng.uniform(0.0, 2 * np.pi, size=lattice.rank))


def phi_sigma(fan: NormalFan, cone: MaxCone, s: Sequence) -> list:
    """Chart map: s on sigma(1) in ray order, 1 elsewhere."""
    if len(s) != len(cone.rays):
        raise ValueError(f"chart coordinates need length {len(cone.rays)}, got {len(s)}")
    out = [1] * fan.ray_count
    for rho, value in zip(cone.rays, s):
        out[rho] = value
    return out


def normalize_to_chart(fan: NormalFan, cone: MaxCone, z: Sequence[complex]) -> Tuple[np.ndarray, np.ndarray]:
    """Find g in G and chart coordinates s with g . z = phi_sigma(s).

    Off sigma(1) we need g_rho = 1 / z_rho; the logs on sigma(1) then follow
    from sum_rho log(g_rho) u_rho = 0, solved with the unimodular block of
    normals of sigma.
    """
    z = np.asarray(z, dtype=complex)
    off = list(fan.off_cone(cone))
    if np.any(z[off] == 0):
        raise ChartError("coordinates off the cone must be nonzero to normalize into its chart")
    U = fan.ray_matrix.astype(float)
    log_g = np.zeros(fan.ray_count, dtype=complex)
    log_g[off] = -np.log(z[off])
    A = U[list(cone.rays)].T
    B = U[off].T
    log_g[list(cone.rays)] = -np.linalg.solve(A, B @ log_g[off]) if off else 0
    g = np.exp(log_g)
    s = g[list(cone.rays)] * z[list(cone.rays)]
    return g, s


def _annihilator(U: np.ndarray, zero_mask: np.ndarray) -> np.ndarray:
    """Integer basis (rows) of {q : <q, u_rho> = 0 for every rho with a zero coordinate}."""
    n = U.shape[1]
    if not zero_mask.any():
        return np.eye(n)
    K = kernel(U[zero_mask].tolist())
    return np.array(K.T, dtype=float).reshape(-1, n)


def orbit_residuals(fan: NormalFan, Z: np.ndarray) -> np.ndarray:
    """Angle residual (radians) of each row of Z against G cap U(1) acting on the orthant.

    Angles on zero coordinates are free. The angles beta_rho = arg(z_rho)/2pi
    of the other coordinates must satisfy sum beta_rho u_rho in Z^n + span(u_F),
    F the zero coordinates, which holds iff Q v is integral for an integer
    basis Q of the annihilator of the u_F.
    """
    Z = np.atleast_2d(np.asarray(Z, dtype=complex))
    U = fan.ray_matrix
    zero = np.abs(Z) == 0
    beta = np.where(zero, 0.0, np.angle(Z) / (2 * np.pi))
    V = beta @ U.astype(float)
    out = np.zeros(len(Z))
    for mask in np.unique(zero, axis=0):
        rows = np.all(zero == mask, axis=1)
        Q = _annihilator(U, mask)
        if Q.size == 0:
            continue
        W = V[rows] @ Q.T
        out[rows] = 2 * np.pi * np.max(np.abs(W - np.round(W)), axis=1)
    return out


def classify_orbit(residual: float, eps: float = 1e-9) -> OrbitStatus:
    if residual < eps:
        return OrbitStatus.YES
    if residual <= 10 * eps:
        return OrbitStatus.BORDERLINE
    return OrbitStatus.NO


def in_unitary_orbit_of_orthant(fan: NormalFan, lattice: RelationLattice, z: Sequence[complex],
                                eps: float = 1e-9) -> OrbitResult:
    """Decide whether z = g . x with g in G cap U(1)^{Sigma(1)} and x >= 0.

    The answer is Borderline when the residual falls in [eps, 10 eps].
    """
    residual = float(orbit_residuals(fan, np.asarray(z))[0])
    return OrbitResult(classify_orbit(residual, eps), residual)
