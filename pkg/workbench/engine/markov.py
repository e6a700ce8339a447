"""Square matrices over Z+[x]: digraph predicates and the Perron root beta_A.

Irreducibility and aperiodicity are read off the digraph of symbolically
nonzero entries. beta_A is only ever evaluated numerically.
"""

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, connected_components

from .config import STAGE_MARKOV, SamplerConfig
from .errors import (DimensionMismatchError, InputRejected, MatrixEntryError, NotAPolynomialError,
                     SpectralRadiusError)
from .expr_parser import format_polynomial, infer_variables, parse_expression
from .laurent import LaurentPolynomial
from .verdicts import Verdict

logger = logging.getLogger(__name__)

POWER_TOLERANCE = 1e-12
POWER_MAX_ITERATIONS = 100_000

DIGRAPH_CONVENTION = "irreducibility and aperiodicity use the digraph of nonzero entries"


@dataclass(frozen=True)
class PolyMatrix:
    entries: Tuple[Tuple[LaurentPolynomial, ...], ...]
    variables: Tuple[str, ...]

    def __post_init__(self):
        d = len(self.entries)
        if d == 0:
            raise InputRejected("matrix must have at least one row")
        for i, row in enumerate(self.entries):
            if len(row) != d:
                raise InputRejected(f"matrix is not square: row {i} has {len(row)} entries, expected {d}")
            for j, entry in enumerate(row):
                _check_entry(entry, i, j, len(self.variables))

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> int:
        return len(self.variables)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[str]], variables: Optional[Sequence[str]] = None) -> "PolyMatrix":
        if variables is None:
            variables = infer_variables(" + ".join(str(e) for row in rows for e in row))
        parsed = []
        for i, row in enumerate(rows):
            out = []
            for j, text in enumerate(row):
                try:
                    out.append(parse_expression(str(text), variables))
                except InputRejected as exc:
                    raise MatrixEntryError(str(exc), i, j) from exc
            parsed.append(tuple(out))
        return cls(tuple(parsed), tuple(variables))

    @classmethod
    def from_json(cls, source: Union[str, Path, Dict, List]) -> "PolyMatrix":
        """Accept a file path, a 2-D list of expressions or {"variables": [...], "entries": [...]}."""
        data = source
        if isinstance(source, (str, Path)):
            try:
                with open(source) as f:
                    data = json.load(f)
            except (OSError, json.JSONDecodeError) as exc:
                raise InputRejected(f"cannot read matrix {source}: {exc}") from exc
        variables = None
        if isinstance(data, dict):
            variables = data.get("variables")
            data = data.get("entries")
        if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
            raise InputRejected("matrix must be a 2-D JSON array of expressions")
        return cls.from_rows(data, variables)

    def evaluate(self, x: Union[float, Sequence[float]]) -> np.ndarray:
        x = _as_point(x, self.n)
        return np.array([[float(e.evaluate(x)) for e in row]
                         for row in self.entries])

    def adjacency(self) -> csr_matrix:
        pattern = [[0 if e.is_zero() else 1 for e in row] for row in self.entries]
        return csr_matrix(np.array(pattern, dtype=np.int8))

    def to_dict(self) -> Dict:
        return {"variables": list(self.variables),
                "entries": [[format_polynomial(e, self.variables) for e in row] for row in self.entries]}


def _check_entry(entry: LaurentPolynomial, row: int, col: int, n: int) -> None:
    if entry.n != n:
        raise MatrixEntryError(f"entry has {entry.n} variables, matrix has {n}", row, col)
    if not entry.is_polynomial():
        raise MatrixEntryError("negative exponent", row, col)
    for _, c in entry.items():
        if c < 0 or c.denominator != 1:
            raise MatrixEntryError(f"coefficient {c} is not a nonnegative integer", row, col)


def _as_point(x, n: int) -> List[float]:
    x = [float(v) for v in np.atleast_1d(x)]
    if len(x) != n:
        raise DimensionMismatchError(f"point has {len(x)} coordinates, matrix uses {n} variables")
    if any(v <= 0 for v in x):
        raise InputRejected(f"evaluation point must be positive, got {x}")
    return x


def power_matrix(q: LaurentPolynomial, k: int, variables: Optional[Sequence[str]] = None) -> PolyMatrix:
    """The 1x1 matrix (q^k)."""
    variables = tuple(variables or [f"x{i + 1}" for i in range(q.n)])
    return PolyMatrix(((q.pow(k),),), variables)


def is_irreducible(A: PolyMatrix) -> bool:
    """Strong connectivity of the digraph with i -> j iff A_ij != 0."""
    if A.size == 1:
        return not A.entries[0][0].is_zero()
    count, _ = connected_components(A.adjacency(), directed=True, connection="strong")
    return count == 1


def period(A: PolyMatrix) -> int:
    """gcd of the cycle lengths of an irreducible digraph, from BFS levels."""
    if not is_irreducible(A):
        raise InputRejected("period is defined for irreducible matrices only")
    graph = A.adjacency()
    order, predecessors = breadth_first_order(graph, 0, directed=True, return_predecessors=True)
    level = np.zeros(A.size, dtype=int)
    for v in order[1:]:
        level[v] = level[predecessors[v]] + 1
    g = 0
    rows, cols = graph.nonzero()
    for u, v in zip(rows, cols):
        g = gcd(g, int(level[u] + 1 - level[v]))
    return abs(g)


def is_aperiodic(A: PolyMatrix) -> bool:
    return period(A) == 1


def gershgorin_bounds(M: np.ndarray) -> Tuple[float, float]:
    sums = M.sum(axis=1)
    return float(sums.min()), float(sums.max())


def spectral_radius_at(A: PolyMatrix, x: Union[float, Sequence[float]],
                       tol: float = POWER_TOLERANCE, max_iter: int = POWER_MAX_ITERATIONS) -> float:
    """Perron root of A(x) by power iteration on A(x) + I.

    The shift makes an irreducible matrix primitive. Each step brackets the
    root between the min and max of (Mv)_i / v_i, and iteration stops once
    the bracket is narrower than tol relative to the root. Reducible
    matrices are rejected before any evaluation.
    """
    if not is_irreducible(A):
        raise InputRejected("spectral radius is computed for irreducible matrices only")
    M = A.evaluate(x)
    lower, upper = gershgorin_bounds(M)
    B = M + np.eye(A.size)
    v = np.ones(A.size)
    for iteration in range(max_iter):
        w = B @ v
        ratios = w / v
        lo, hi = float(ratios.min()), float(ratios.max())
        if hi - lo <= tol * max(1.0, hi):
            logger.debug("power iteration converged after %d steps", iteration + 1)
            return 0.5 * (lo + hi) - 1.0
        v = w / np.max(w)
    raise SpectralRadiusError(f"power iteration did not converge in {max_iter} steps", lower, upper)


def _sample_points(rng: np.random.Generator, count: int, n: int) -> np.ndarray:
    return 10.0 ** rng.uniform(-1.0, 1.0, size=(count, n))


def verify_beta_equals(A: PolyMatrix, target: LaurentPolynomial, points: Optional[np.ndarray] = None,
                       tol: float = 1e-10, cfg: Optional[SamplerConfig] = None,
                       sample_count: int = 100) -> Verdict:
    """Compare beta_A with ``target`` at positive points.

    A 1x1 matrix whose entry equals the target is certified symbolically
    once the samples agree; otherwise agreement on every point is only supporting evidence and any
    relative mismatch above tol refutes.
    """
    if not target.is_polynomial():
        raise NotAPolynomialError("target must be a polynomial with nonnegative exponents")
    if target.n != A.n:
        raise DimensionMismatchError(f"target has {target.n} variables, matrix uses {A.n}")
    if points is None:
        cfg = cfg or SamplerConfig()
        points = _sample_points(cfg.rng(STAGE_MARKOV), sample_count, A.n)
    points = np.atleast_2d(np.asarray(points, dtype=float))
    worst = 0.0
    for x in points:
        beta = spectral_radius_at(A, x)
        expected = float(target.evaluate([Fraction(float(v)) for v in x]))
        deviation = abs(beta - expected) / max(1.0, abs(expected))
        worst = max(worst, deviation)
        if deviation > tol:
            return Verdict.counterexample({"point": x.tolist(), "beta": beta, "target": expected,
                                           "relative_deviation": deviation}, samples=len(points))
    if A.size == 1 and A.entries[0][0] == target:
        return Verdict.certified("symbolic-1x1", samples=len(points), max_relative_deviation=worst)
    verdict = Verdict.inconclusive(samples=len(points), max_relative_deviation=worst)
    verdict.flag("agrees-on-samples")
    return verdict


def describe(A: PolyMatrix) -> Dict:
    """Digraph facts for a report."""
    irreducible = is_irreducible(A)
    data = {"size": A.size, "irreducible": irreducible, "notes": [DIGRAPH_CONVENTION]}
    if irreducible:
        data["period"] = period(A)
        data["aperiodic"] = data["period"] == 1
    return data
