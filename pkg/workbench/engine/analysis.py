"""Convexity toolkit for chart restrictions: J_f matrices, log-Hessians, span and sampled inequalities.

Derivatives are taken symbolically on exact polynomials; floats only enter
at evaluation. Inequality checks that can be phrased over rationals are
re-verified exactly, so a reported counterexample is never a rounding artifact.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

import mpmath
import numpy as np

from .config import STAGE_CONVEXITY, STAGE_PD, STAGE_SGCS, SamplerConfig
from .errors import EvaluationError, NotAPolynomialError, ZeroPolynomialError
from .fan_group import (NormalFan, RelationLattice, normalize_to_chart, phi_sigma,
                        positive_group_element, random_unitary_group_element)
from .homogenize import HomogenizedPolynomial, chart_restriction, polarized_eval
from .laurent import LaurentPolynomial
from .lattice import rank, smith_invariants
from .polytope import newton_polytope
from .verdicts import BORDERLINE, EQUALITY_TYPE, HYPOTHESIS_FAILURE, Verdict

logger = logging.getLogger(__name__)

PIVOT_TOLERANCE = 1e-12


@dataclass
class JMatrix:
    matrix: np.ndarray
    point: np.ndarray

    @property
    def asymmetry(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.T)))


class _Derivatives:
    """f together with its first and second partials, evaluated in bulk."""

    def __init__(self, f: LaurentPolynomial):
        self.f = f
        self.ell = f.n
        self.first = [f.derivative(i) for i in range(self.ell)]
        self.second = [[self.first[i].derivative(j) for j in range(self.ell)] for i in range(self.ell)]

    def j_matrices(self, S: np.ndarray) -> np.ndarray:
        S = np.atleast_2d(np.asarray(S, dtype=float))
        F = self.f.evaluate_array(S)
        if np.any(F <= 0):
            raise EvaluationError("J_f needs f(s) > 0 at every point")
        Fi = np.stack([d.evaluate_array(S) for d in self.first], axis=1)
        J = np.empty((len(S), self.ell, self.ell))
        for i in range(self.ell):
            for j in range(self.ell):
                Fij = self.second[i][j].evaluate_array(S)
                J[:, i, j] = S[:, i] * S[:, j] * (Fij / F - Fi[:, i] * Fi[:, j] / F ** 2)
            J[:, i, i] += S[:, i] * Fi[:, i] / F
        return J


def j_matrix(f: LaurentPolynomial, s: Sequence[float]) -> JMatrix:
    """J_f(s)_ij = s_j d/ds_j (s_i d/ds_i log f)(s)."""
    point = np.asarray(s, dtype=float)
    return JMatrix(_Derivatives(f).j_matrices(point)[0], point)


def hessian_log_fsharp(f: LaurentPolynomial, t: Sequence[float]) -> np.ndarray:
    """Hessian of log f(e^t1, ..., e^tl), from the exponent vectors directly."""
    exps, coeffs = f.to_arrays()
    t = np.asarray(t, dtype=float)
    w = coeffs * np.exp(exps @ t)
    F = w.sum()
    if F <= 0:
        raise EvaluationError("log f# needs f#(t) > 0")
    first = exps.T @ w
    second = (exps.T * w) @ exps
    return second / F - np.outer(first, first) / F ** 2


def finite_difference_hessian(func: Callable[[np.ndarray], float], t: Sequence[float],
                              step: float = 1e-4) -> np.ndarray:
    """Central-difference Hessian of a scalar function."""
    t = np.asarray(t, dtype=float)
    ell = len(t)
    H = np.empty((ell, ell))
    E = np.eye(ell) * step
    for i in range(ell):
        for j in range(ell):
            H[i, j] = (func(t + E[i] + E[j]) - func(t + E[i] - E[j])
                       - func(t - E[i] + E[j]) + func(t - E[i] - E[j])) / (4 * step * step)
    return H


def log_fsharp(f: LaurentPolynomial, center: Optional[Sequence[float]] = None) -> Callable[[np.ndarray], float]:
    """t -> log f(e^t), minus its value at ``center`` when one is given.

    Centering keeps the result near zero so finite differences lose less to rounding.
    """
    exps, coeffs = f.to_arrays()
    base = 1.0 if center is None else float(coeffs @ np.exp(exps @ np.asarray(center, dtype=float)))
    return lambda t: float(np.log((coeffs @ np.exp(exps @ t)) / base))


def lattice_span_check(f: LaurentPolynomial) -> bool:
    """Whether the differences m - m' of support points generate Z^l."""
    if f.is_zero():
        raise ZeroPolynomialError("span check needs a nonzero polynomial")
    support = sorted(f.support())
    base = support[0]
    diffs = [[a - b for a, b in zip(m, base)] for m in support[1:]]
    if not diffs or rank(diffs) < f.n:
        return False
    return all(d == 1 for d in smith_invariants(diffs))


def is_positive_definite(J: np.ndarray, tol: float = PIVOT_TOLERANCE) -> bool:
    try:
        L = np.linalg.cholesky(J)
    except np.linalg.LinAlgError:
        return False
    return bool(np.min(np.diag(L)) ** 2 > tol)


def _interior_samples(rng: np.random.Generator, count: int, ell: int, decades: float) -> np.ndarray:
    return 10.0 ** rng.uniform(-decades, decades, size=(count, ell))


def check_pd_on_samples(f: LaurentPolynomial, cfg: SamplerConfig, stream: Sequence[int] = ()) -> Verdict:
    """Cholesky test of J_f on sampled interior points of the positive orthant."""
    if f.is_zero() or newton_polytope(f).dimension < f.n:
        verdict = Verdict.inconclusive(samples=0, reason="Newton polytope is not full-dimensional")
        verdict.flag(HYPOTHESIS_FAILURE)
        return verdict
    rng = cfg.rng(STAGE_PD, *stream)
    S = _interior_samples(rng, cfg.analysis_samples, f.n, cfg.radius_decades)
    values = f.evaluate_array(S)
    positive = values > 0
    verdict_flags = []
    if not positive.all():
        verdict_flags.append(HYPOTHESIS_FAILURE)
        S = S[positive]
    if not len(S):
        verdict = Verdict.inconclusive(samples=0)
        verdict.flag(HYPOTHESIS_FAILURE)
        return verdict
    J = _Derivatives(f).j_matrices(S)
    eig_min = np.linalg.eigvalsh(J)[:, 0]
    borderline = 0
    for idx in np.argsort(eig_min):
        if is_positive_definite(J[idx]):
            break
        if eig_min[idx] < -1e-9:
            verdict = Verdict.counterexample(
                {"point": S[idx].tolist(), "min_eigenvalue": float(eig_min[idx])},
                samples=len(S))
            for name in verdict_flags:
                verdict.flag(name)
            return verdict
        borderline += 1
    verdict = Verdict.inconclusive(samples=len(S), min_eigenvalue=float(eig_min.min()),
                                   borderline_points=borderline)
    for name in verdict_flags:
        verdict.flag(name)
    if borderline:
        verdict.flag(BORDERLINE)
    return verdict


def _random_rational(rng: np.random.Generator, decades: float) -> Fraction:
    return Fraction(10.0 ** rng.uniform(-decades / 2, decades / 2)).limit_denominator(1000)


def monotonicity_and_logconvexity_check(f: LaurentPolynomial, cfg: SamplerConfig,
                                        stream: Sequence[int] = ()) -> Verdict:
    """Sampled exact checks of strict monotonicity along the coordinate flag and of
    f(sqrt(s s'))^2 < f(s) f(s') for s != s'.

    Points are squares of rationals so every geometric mean is rational.
    """
    if not f.is_polynomial():
        raise NotAPolynomialError("chart restrictions must have nonnegative exponents")
    if not lattice_span_check(f):
        verdict = Verdict.inconclusive(samples=0, reason="support differences do not span the lattice")
        verdict.flag(HYPOTHESIS_FAILURE)
        return verdict
    rng = cfg.rng(STAGE_CONVEXITY, *stream)
    ell = f.n
    for sample in range(cfg.analysis_samples):
        r = [_random_rational(rng, cfg.radius_decades) for _ in range(ell)]
        r2 = [_random_rational(rng, cfg.radius_decades) for _ in range(ell)]
        s = [x * x for x in r]
        s2 = [x * x for x in r2]

        k = int(rng.integers(1, ell + 1))
        lower = s[:k - 1] + [Fraction(0)] * (ell - k + 1)
        upper = s[:k] + [Fraction(0)] * (ell - k)
        lo, hi = f.evaluate(lower), f.evaluate(upper)
        if not lo < hi:
            return Verdict.counterexample(
                {"kind": "monotonicity", "lower_point": lower, "upper_point": upper,
                 "values": [lo, hi]},
                flags=[EQUALITY_TYPE] if lo == hi else [], samples=sample + 1)

        if s == s2:
            continue
        mean = [a * b for a, b in zip(r, r2)]
        lhs = f.evaluate(mean) ** 2
        rhs = f.evaluate(s) * f.evaluate(s2)
        if not lhs < rhs:
            return Verdict.counterexample(
                {"kind": "log-convexity", "s": s, "s_prime": s2, "lhs": lhs, "rhs": rhs},
                flags=[EQUALITY_TYPE] if lhs == rhs else [], samples=sample + 1)
    return Verdict.inconclusive(samples=cfg.analysis_samples)


def log_convexity_gap(ph: HomogenizedPolynomial, x: Sequence[float], y: Sequence[float]) -> float:
    """p~(x) p~(y) - p~(sqrt(x y))^2 for nonnegative real x, y."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    poly = ph.polynomial
    mid = np.sqrt(x * y)
    values = poly.evaluate_array(np.stack([x, y, mid]))
    return float(values[0] * values[1] - values[2] ** 2)


def _hp_polarized_ratio(ph: HomogenizedPolynomial, z: np.ndarray, w: np.ndarray) -> float:
    with mpmath.workdps(50):
        zz = [mpmath.mpc(complex(a)) for a in z]
        ww = [mpmath.mpc(complex(b)) for b in w]

        def evaluate(point):
            total = mpmath.mpc(0)
            for E, c in ph.polynomial.items():
                term = mpmath.mpf(c.numerator) / c.denominator
                for x, e in zip(point, E):
                    if e:
                        term *= x ** e
                total += term
            return total

        cross = evaluate([a * mpmath.conj(b) for a, b in zip(zz, ww)])
        zz_norm = evaluate([a * mpmath.conj(a) for a in zz]).real
        ww_norm = evaluate([b * mpmath.conj(b) for b in ww]).real
        return float(abs(cross) ** 2 / (zz_norm * ww_norm))


def sgcs_sample_check(ph: HomogenizedPolynomial, fan: NormalFan, lattice: RelationLattice,
                      cfg: SamplerConfig) -> Verdict:
    """Sample pairs in distinct G-orbits and test |P~(z, w)|^2 < P~(z, z) P~(w, w).

    Pairs are compared after normalizing both points into the first point's
    chart; for a smooth cone the stabilizer of chart form in G is trivial, so
    equal chart coordinates mean equal orbits. Pairs w = g . z with g drawn
    from G are also generated and must show equality.
    """
    rng = cfg.rng(STAGE_SGCS)
    n, R = fan.n, fan.ray_count
    decades = cfg.radius_decades / 3
    strict_pairs = same_orbit_pairs = 0
    best_ratio = 0.0
    worst_equality = 0.0
    flags: List[str] = []
    for sample in range(cfg.analysis_samples):
        cone = fan.cones[int(rng.integers(len(fan.cones)))]

        def chart_point():
            w = 10.0 ** rng.uniform(-decades, decades, size=n) * np.exp(2j * np.pi * rng.random(n))
            return np.array(phi_sigma(fan, cone, list(w)), dtype=complex)

        z = chart_point()
        if sample % 4 == 3:
            w = positive_group_element(lattice, rng.normal(size=lattice.rank)) * z
        elif sample % 4 == 2:
            w = random_unitary_group_element(lattice, rng) * z
        else:
            w = chart_point()
        _, s_z = normalize_to_chart(fan, cone, z)
        _, s_w = normalize_to_chart(fan, cone, w)
        cross = polarized_eval(ph, z, w)
        zz = polarized_eval(ph, z, z).real
        ww = polarized_eval(ph, w, w).real
        if zz <= 0 or ww <= 0:
            flags.append(HYPOTHESIS_FAILURE)
            continue
        ratio = abs(cross) ** 2 / (zz * ww)
        if np.allclose(s_z, s_w, rtol=1e-9, atol=1e-12):
            same_orbit_pairs += 1
            worst_equality = max(worst_equality, abs(ratio - 1))
            continue
        strict_pairs += 1
        best_ratio = max(best_ratio, ratio)
        if ratio >= 1 - cfg.tolerance and _hp_polarized_ratio(ph, z, w) >= 1 - cfg.tolerance:
            return Verdict.counterexample(
                {"z": [[c.real, c.imag] for c in z], "w": [[c.real, c.imag] for c in w],
                 "ratio": ratio}, samples=sample + 1)
    verdict = Verdict.inconclusive(samples=cfg.analysis_samples, strict_pairs=strict_pairs,
                                   same_orbit_pairs=same_orbit_pairs, best_ratio=best_ratio,
                                   same_orbit_max_deviation=worst_equality)
    for name in sorted(set(flags)):
        verdict.flag(name)
    return verdict


def run_analysis(ph: HomogenizedPolynomial, fan: NormalFan, lattice: RelationLattice,
                 cfg: SamplerConfig, include_sgcs: bool = True) -> Dict:
    """Convexity checks on every full chart restriction, plus the polarized sampler."""
    charts = []
    for cone in fan.cones:
        f = chart_restriction(ph, cone)
        entry = {
            "cone": cone.index,
            "span_generates_lattice": lattice_span_check(f),
            "positive_definite": check_pd_on_samples(f, cfg, (cone.index,)).to_dict(),
            "monotone_log_convex": monotonicity_and_logconvexity_check(f, cfg, (cone.index,)).to_dict(),
        }
        charts.append(entry)
    result = {
        "charts": charts,
        "notes": ["modulus inequality near the orthant is verified on sampled points only"],
    }
    if include_sgcs:
        result["polarized_cauchy_schwarz"] = sgcs_sample_check(ph, fan, lattice, cfg).to_dict()
    logger.info("analysis finished for %d charts", len(charts))
    return result
