"""Positivity checkers: full positivity of coefficients, Pos1/Pos2/Pos3, the k0 search and
the end-to-end pipeline.

Pos2, Pos3 and positivity on the orthant are semi-decided chart by chart:
a certificate proves, an exactly re-verified witness refutes, and anything
else is reported as inconclusive together with what was sampled.
"""

import itertools
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import mpmath
import numpy as np
from scipy.optimize import minimize

from .analysis import lattice_span_check, run_analysis
from .config import STAGE_AMBIENT, STAGE_ORTHANT, STAGE_POS2, STAGE_POS3, SamplerConfig
from .errors import ZeroPolynomialError
from .fan_group import (MaxCone, NormalFan, RelationLattice, build_normal_fan,
                        e_sigma, in_irrelevant_set, orbit_residuals, phi_sigma, relation_lattice)
from .homogenize import HomogenizedPolynomial, chart_restriction, evaluate_homog, homogenize, restrict_to_chart
from .laurent import Exponent, LaurentPolynomial
from .polytope import LatticePolytope, dilate, lattice_points, newton_polytope
from .verdicts import BORDERLINE, EQUALITY_TYPE, NEAR_ORBIT, Verdict, combine

logger = logging.getLogger(__name__)

STRUCTURED_VALUES = (Fraction(0), Fraction(1), Fraction(2), Fraction(1, 2))
ROOT_OF_UNITY_ORDERS = (2, 3, 4, 6)
MAX_STRUCTURED_POINTS = 4096
MAX_VERIFICATIONS = 16
HP_EQUALITY = 1e-15


# -- full positivity ------------------------------------------------------

@dataclass
class FullPositivity:
    fully_positive: bool
    failures: List[Tuple[Exponent, Fraction]]
    lattice_point_count: int

    def __bool__(self):
        return self.fully_positive

    @property
    def first_failure(self) -> Optional[Exponent]:
        return self.failures[0][0] if self.failures else None

    def to_dict(self) -> Dict:
        data = {"fully_positive": self.fully_positive,
                "lattice_points": self.lattice_point_count}
        if self.failures:
            m, c = self.failures[0]
            data["first_failure"] = {"m": list(m), "c": c}
            data["failure_count"] = len(self.failures)
            data["failures"] = [{"m": list(m), "c": c} for m, c in self.failures]
        return data


def _scan_key(m: Exponent):
    # First exponent varies fastest.
    return tuple(reversed(m))


def is_fully_positive(p: LaurentPolynomial, polytope: Optional[LatticePolytope] = None,
                      max_failures: Optional[int] = None) -> FullPositivity:
    """c_m > 0 at every lattice point of the Newton polytope; gaps count as failures."""
    if p.is_zero():
        raise ZeroPolynomialError("full positivity is undefined for the zero polynomial")
    polytope = polytope or newton_polytope(p)
    points = sorted(lattice_points(polytope), key=_scan_key)
    failures = []
    for m in points:
        c = p.coefficient(m)
        if c <= 0:
            failures.append((m, c))
            if max_failures and len(failures) >= max_failures:
                break
    return FullPositivity(not failures, failures, len(points))


# -- certificates on the closed orthant ------------------------------------

def coefficient_certificate(f: LaurentPolynomial) -> bool:
    """All coefficients nonnegative and a positive constant term."""
    return (f.coefficient((0,) * f.n) > 0
            and all(c >= 0 for _, c in f.items()))


def bernstein_coefficients(f: LaurentPolynomial) -> np.ndarray:
    """Coefficients of (prod (1-t_i)^d_i) f(t/(1-t)) in the tensor Bernstein basis."""
    degrees = [f.degree_in(i) for i in range(f.n)]
    b = np.zeros([d + 1 for d in degrees], dtype=object)
    b[...] = Fraction(0)
    for m, c in f.items():
        b[m] = c / np.prod([comb(d, e) for d, e in zip(degrees, m)])
    return b


def _elevate(b: np.ndarray, axis: int) -> np.ndarray:
    d = b.shape[axis] - 1
    pad_shape = list(b.shape)
    pad_shape[axis] = 1
    pad = np.zeros(pad_shape, dtype=object)
    pad[...] = Fraction(0)
    prev = np.concatenate([pad, b], axis=axis)
    same = np.concatenate([b, pad], axis=axis)
    shape = [1] * b.ndim
    shape[axis] = d + 2
    j = np.array([Fraction(i, d + 1) for i in range(d + 2)], dtype=object).reshape(shape)
    return j * prev + (1 - j) * same


def _corner_values(b: np.ndarray) -> List:
    corners = itertools.product(*[(0, s - 1) for s in b.shape])
    return [b[c] for c in corners]


def bernstein_certificate(f: LaurentPolynomial, max_elevation: int) -> Optional[int]:
    """Number of degree elevations after which every Bernstein coefficient is positive.

    Positive coefficients prove f > 0 on the closed orthant, including its
    behaviour at infinity. Returns None when no certificate is found: corner
    coefficients are values of the compactified polynomial and never change,
    so a nonpositive corner ends the search at once.
    """
    if not f.is_polynomial() or f.is_zero():
        return None
    b = bernstein_coefficients(f)
    if any(v <= 0 for v in _corner_values(b)):
        return None
    for rounds in range(max_elevation + 1):
        if all(v > 0 for v in b.flat):
            return rounds
        for axis in range(b.ndim):
            b = _elevate(b, axis)
    return None


# -- falsification on the orthant --------------------------------------------

class _FloatPoly:
    """Vectorised float evaluation of f and of its majorant sum |c_m| s^m."""

    def __init__(self, f: LaurentPolynomial):
        self.exps, self.coeffs = f.to_arrays()
        self.abs_coeffs = np.abs(self.coeffs)

    def _monomials(self, S: np.ndarray) -> np.ndarray:
        return np.prod(S[:, None, :] ** self.exps[None, :, :], axis=2)

    def normalized(self, S: np.ndarray) -> np.ndarray:
        """f(s) / sum |c_m| s^m, in [-1, 1] with the sign of f."""
        S = np.atleast_2d(S)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            mono = self._monomials(S)
            values = mono @ self.coeffs
            scale = mono @ self.abs_coeffs
            out = np.where(scale > 0, values / np.where(scale > 0, scale, 1), 0.0)
        # Overflow far out in the orthant is not evidence either way.
        return np.nan_to_num(out, nan=1.0)


def _exact(values: Sequence) -> List[Fraction]:
    return [v if isinstance(v, Fraction) else Fraction(float(v)) for v in values]


def _orthant_samples(rng: np.random.Generator, count: int, k: int, decades: float,
                     zero_probability: float = 0.1) -> np.ndarray:
    S = 10.0 ** rng.uniform(-decades, decades, size=(count, k))
    S[rng.random((count, k)) < zero_probability] = 0.0
    return S


def _exact_violation(f: LaurentPolynomial, point: Sequence, lift: Callable, stage: str,
                     **stats) -> Optional[Verdict]:
    exact_point = _exact(point)
    value = f.evaluate(exact_point)
    if value > 0:
        return None
    scale = sum(float(abs(c)) * float(np.prod([float(x) ** e for x, e in zip(exact_point, m)]))
                for m, c in f.items())
    witness = {"stage": stage, "chart_point": exact_point, "value": value,
               "margin": float(-value) / scale if scale else 0.0}
    witness.update(lift(exact_point))
    return Verdict.counterexample(witness, flags=[EQUALITY_TYPE] if value == 0 else [], **stats)


def orthant_verdict(f: LaurentPolynomial, cfg: SamplerConfig, rng: np.random.Generator,
                    lift: Callable[[List[Fraction]], Dict]) -> Verdict:
    """Decide f > 0 on the closed orthant of its variables, as far as the budgets allow.

    Order: coefficient certificate, Bernstein certificate, structured points,
    log-uniform samples, then multistart minimization on the compactified box.
    ``lift`` maps a chart point to witness fields in ambient coordinates.
    """
    if coefficient_certificate(f):
        return Verdict.certified("nonnegative-coefficients")
    rounds = bernstein_certificate(f, cfg.bernstein_elevation) if cfg.compactify else None
    if rounds is not None:
        verdict = Verdict.certified("bernstein")
        verdict.stats["elevations"] = rounds
        return verdict

    k = f.n
    samples = restarts = 0
    best = np.inf

    if len(STRUCTURED_VALUES) ** k <= MAX_STRUCTURED_POINTS:
        worst = None
        for point in itertools.product(STRUCTURED_VALUES, repeat=k):
            samples += 1
            value = f.evaluate(list(point))
            if value <= 0 and (worst is None or value < worst[1]):
                worst = (list(point), value)
        if worst is not None:
            return _exact_violation(f, worst[0], lift, "structured", samples=samples, restarts=0)

    fp = _FloatPoly(f)
    if cfg.sample_count:
        S = _orthant_samples(rng, cfg.sample_count, k, cfg.radius_decades)
        samples += len(S)
        normalized = fp.normalized(S)
        best = min(best, float(normalized.min()))
        for idx in np.argsort(normalized)[:MAX_VERIFICATIONS]:
            if normalized[idx] > cfg.tolerance:
                break
            found = _exact_violation(f, S[idx], lift, "sampling", samples=samples, restarts=0)
            if found:
                return found

    upper = 1.0 - 1e-9
    if cfg.compactify:
        to_orthant = lambda t: t / (1.0 - t)
        bounds = [(0.0, upper)] * k
    else:
        to_orthant = lambda t: t
        bounds = [(0.0, 10.0 ** cfg.radius_decades)] * k
    objective = lambda t: float(fp.normalized(to_orthant(np.asarray(t))[None, :])[0])
    for _ in range(cfg.restart_count):
        restarts += 1
        x0 = rng.uniform(0.0, upper, size=k) if cfg.compactify else \
            10.0 ** rng.uniform(-cfg.radius_decades, cfg.radius_decades, size=k)
        result = minimize(objective, x0, method="L-BFGS-B", bounds=bounds)
        best = min(best, float(result.fun))
        if result.fun <= cfg.tolerance:
            found = _exact_violation(f, to_orthant(np.asarray(result.x)), lift, "minimization",
                                     samples=samples, restarts=restarts)
            if found:
                return found

    return Verdict.inconclusive(samples=samples, restarts=restarts,
                                best_margin=None if not np.isfinite(best) else best)


def _constant_verdict(value: Fraction, witness: Dict) -> Verdict:
    if value > 0:
        return Verdict.certified("constant")
    witness = dict(witness, value=value)
    return Verdict.counterexample(witness, flags=[EQUALITY_TYPE] if value == 0 else [])


def _run_tasks(tasks: Sequence[Callable[[], Verdict]], cfg: SamplerConfig) -> List[Verdict]:
    if cfg.max_workers == 1 or len(tasks) < 2:
        return [task() for task in tasks]
    with ThreadPoolExecutor(max_workers=cfg.max_workers) as pool:
        return list(pool.map(lambda task: task(), tasks))


def _chart_lift(fan: NormalFan, cone: MaxCone, zero_slot: Optional[int] = None):
    def lift(point: List[Fraction]) -> Dict:
        chart = list(point)
        if zero_slot is not None:
            chart.insert(zero_slot, Fraction(0))
        return {"point": phi_sigma(fan, cone, chart)}
    return lift


# -- Pos1 ---------------------------------------------------------------

def check_pos1(ph: HomogenizedPolynomial, fan: NormalFan) -> Verdict:
    """p~(e^sigma) > 0 for every maximal cone, evaluated exactly."""
    values = []
    for cone in fan.cones:
        point = e_sigma(fan, cone)
        value = evaluate_homog(ph, list(point))
        values.append({"cone": cone.index, "vertex": list(cone.vertex), "value": value})
        if value <= 0:
            return Verdict.counterexample(
                {"cone": cone.index, "vertex": list(cone.vertex), "point": list(point), "value": value},
                flags=[EQUALITY_TYPE] if value == 0 else [])
    verdict = Verdict.certified("vertex-values")
    verdict.stats["values"] = values
    return verdict


# -- Pos2 ---------------------------------------------------------------

def _pos2_pair(ph: HomogenizedPolynomial, fan: NormalFan, cone: MaxCone, rho: int,
               cfg: SamplerConfig) -> Verdict:
    derivative = ph.partial(rho)
    slot = cone.rays.index(rho)
    if fan.n == 1:
        point = e_sigma(fan, cone)
        return _constant_verdict(derivative.evaluate(list(point)), {"point": list(point)})
    others = [j for j in range(fan.n) if j != slot]
    f = restrict_to_chart(derivative, fan, cone, tau=others + [slot], ell=fan.n - 1)
    if f.is_zero():
        point = e_sigma(fan, cone)
        return _constant_verdict(Fraction(0), {"point": list(point)})
    rng = cfg.rng(cone.index, STAGE_POS2, rho)
    return orthant_verdict(f, cfg, rng, _chart_lift(fan, cone, zero_slot=slot))


def _pos2_ambient(ph: HomogenizedPolynomial, fan: NormalFan, cfg: SamplerConfig) -> Dict:
    """Sample F_rho of the positive orthant directly, without charts."""
    rng = cfg.rng(STAGE_AMBIENT, STAGE_POS2)
    per_ray = max(1, cfg.sample_count // max(1, fan.ray_count))
    violations = []
    samples = 0
    for rho in range(fan.ray_count):
        derivative = ph.partial(rho)
        fp = _FloatPoly(derivative)
        Z = _orthant_samples(rng, per_ray, fan.ray_count, cfg.radius_decades, zero_probability=0.05)
        Z[:, rho] = 0.0
        keep = np.array([not in_irrelevant_set(fan, row) for row in Z], dtype=bool)
        Z = Z[keep]
        samples += len(Z)
        if not len(Z):
            continue
        normalized = fp.normalized(Z) if len(derivative) else np.zeros(len(Z))
        for idx in np.argsort(normalized)[:MAX_VERIFICATIONS]:
            if normalized[idx] > cfg.tolerance:
                break
            point = _exact(Z[idx])
            if derivative.evaluate(point) <= 0:
                violations.append({"ray": rho, "point": point})
                break
    return {"samples": samples, "violations": violations}


def check_pos2(ph: HomogenizedPolynomial, fan: NormalFan, cfg: SamplerConfig) -> Verdict:
    """dp~/dz_rho > 0 on F_rho of the positive orthant, off Z(Sigma), one chart pair at a time."""
    pairs = [(cone, rho) for cone in fan.cones for rho in cone.rays]
    tasks = [lambda c=c, r=r: _pos2_pair(ph, fan, c, r, cfg) for c, r in pairs]
    parts = _run_tasks(tasks, cfg)
    labels = [{"cone": c.index, "ray": r} for c, r in pairs]
    verdict = combine(parts, labels)
    if not cfg.chart_only:
        ambient = _pos2_ambient(ph, fan, cfg)
        violations = ambient["violations"]
        verdict.stats["ambient"] = {"samples": ambient["samples"], "violations": len(violations)}
        if violations and verdict.certified_true:
            verdict.flag("CONFLICT: chart certificate contradicted by ambient sample")
        elif violations and not verdict.refuted:
            # Ambient witnesses are exact, so they refute on their own.
            stats = dict(verdict.stats)
            parts = verdict.parts
            verdict = Verdict.counterexample(dict(violations[0], mode="ambient"), **stats)
            verdict.parts = parts
    logger.info("Pos2: %s", verdict.status.value)
    return verdict


# -- positivity of p~ on the orthant -------------------------------------

def _orthant_chart(ph: HomogenizedPolynomial, fan: NormalFan, cone: MaxCone, cfg: SamplerConfig) -> Verdict:
    f = chart_restriction(ph, cone)
    rng = cfg.rng(cone.index, STAGE_ORTHANT)
    return orthant_verdict(f, cfg, rng, _chart_lift(fan, cone))


def positive_on_orthant(ph: HomogenizedPolynomial, fan: NormalFan, cfg: SamplerConfig) -> Verdict:
    """p~ > 0 on the positive orthant minus Z(Sigma), chart by chart."""
    tasks = [lambda c=c: _orthant_chart(ph, fan, c, cfg) for c in fan.cones]
    parts = _run_tasks(tasks, cfg)
    verdict = combine(parts, [{"cone": c.index} for c in fan.cones])
    logger.info("orthant positivity: %s", verdict.status.value)
    return verdict


# -- Pos3 ---------------------------------------------------------------

def _turn_options() -> List[Fraction]:
    turns = {Fraction(0)}
    for q in ROOT_OF_UNITY_ORDERS:
        turns.update(Fraction(k, q) for k in range(1, q))
    return sorted(turns)


def _structured_chart_points(n: int) -> List[List[Tuple[Fraction, Fraction]]]:
    options = [(Fraction(1), t) for t in _turn_options()] + [(Fraction(0), Fraction(0))]
    if len(options) ** n > MAX_STRUCTURED_POINTS:
        return []
    return [list(p) for p in itertools.product(options, repeat=n)]


def _mp(x) -> mpmath.mpf:
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(float(x))


def _hp_modulus_ratio(ph: HomogenizedPolynomial, polar: Sequence[Tuple]) -> Tuple[float, float, float]:
    """|p~(z)|, p~(|z|) and their ratio at 50 digits, z_rho = r_rho exp(2 pi i turn_rho)."""
    with mpmath.workdps(50):
        z = [_mp(r) * mpmath.expjpi(2 * _mp(t)) for r, t in polar]
        moduli = [_mp(r) for r, _ in polar]
        value = mpmath.mpc(0)
        absolute = mpmath.mpf(0)
        for E, c in ph.polynomial.items():
            coeff = _mp(c)
            term = coeff
            term_abs = coeff
            for zr, mr, e in zip(z, moduli, E):
                if e:
                    term *= zr ** e
                    term_abs *= mr ** e
            value += term
            absolute += term_abs
        modulus = abs(value)
        ratio = modulus / absolute if absolute > 0 else mpmath.inf
        return float(modulus), float(absolute), float(ratio)


def _pos3_chart(ph: HomogenizedPolynomial, fan: NormalFan, cone: MaxCone, cfg: SamplerConfig) -> Verdict:
    rng = cfg.rng(cone.index, STAGE_POS3)
    n, R = fan.n, fan.ray_count
    rays = list(cone.rays)
    poly = ph.polynomial
    eps = cfg.tolerance

    # Chart points in polar form: (modulus, turn) per chart coordinate.
    structured = _structured_chart_points(n)
    moduli = 10.0 ** rng.uniform(-cfg.radius_decades, cfg.radius_decades, size=(cfg.sample_count, n))
    moduli[rng.random((cfg.sample_count, n)) < 0.05] = 0.0
    turns = rng.random((cfg.sample_count, n))
    polar_r = np.vstack([np.array([[float(r) for r, _ in p] for p in structured]).reshape(-1, n), moduli])
    polar_t = np.vstack([np.array([[float(t) for _, t in p] for p in structured]).reshape(-1, n), turns])
    exact_polar = structured

    def to_ambient(radii: np.ndarray, phases: np.ndarray) -> np.ndarray:
        Z = np.ones((len(radii), R), dtype=complex)
        Z[:, rays] = radii * np.exp(2j * np.pi * phases)
        return Z

    def ratios(Z: np.ndarray) -> np.ndarray:
        values = np.abs(poly.evaluate_array(Z))
        absolute = np.real(poly.evaluate_array(np.abs(Z)))
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(absolute > 0, values / np.where(absolute > 0, absolute, 1), np.inf)

    Z = to_ambient(polar_r, polar_t)
    ratio = ratios(Z)
    residual = orbit_residuals(fan, Z)

    # Multistart ascent of the modulus ratio over log-moduli and phases.
    restarts = 0
    lo = -cfg.radius_decades * np.log(10)
    bounds = [(lo, -lo)] * n + [(0.0, 1.0)] * n
    objective = lambda x: -float(ratios(to_ambient(np.exp(x[None, :n]), x[None, n:]))[0])
    ascent_r, ascent_t = [], []
    for _ in range(cfg.restart_count):
        restarts += 1
        x0 = np.concatenate([rng.uniform(lo, -lo, size=n), rng.random(n)])
        result = minimize(objective, x0, method="L-BFGS-B", bounds=bounds)
        if np.isfinite(result.fun):
            ascent_r.append(np.exp(result.x[:n]))
            ascent_t.append(result.x[n:])
    if ascent_r:
        Za = to_ambient(np.array(ascent_r), np.array(ascent_t))
        Z = np.vstack([Z, Za])
        polar_r = np.vstack([polar_r, np.array(ascent_r)])
        polar_t = np.vstack([polar_t, np.array(ascent_t)])
        ratio = np.concatenate([ratio, ratios(Za)])
        residual = np.concatenate([residual, orbit_residuals(fan, Za)])

    excluded = residual <= 10 * eps
    considered = residual > cfg.orbit_separation
    near = ~excluded & ~considered & (ratio >= 1 - eps)
    stats = {"samples": len(Z) - len(ascent_r), "restarts": restarts,
             "skipped_in_orbit": int(excluded.sum()), "near_orbit_hits": int(near.sum())}
    finite = considered & np.isfinite(ratio)
    stats["best_ratio"] = float(ratio[finite].max()) if finite.any() else None

    candidates = np.flatnonzero(considered & (ratio >= 1 - eps))
    # Ties in ratio go to the earlier (structured, exactly representable) point.
    order = np.argsort(-np.round(ratio[candidates], 12), kind="stable")
    near_equality = 0
    for idx in candidates[order][:MAX_VERIFICATIONS]:
        structured_point = idx < len(exact_polar)
        if structured_point:
            polar = exact_polar[idx]
        else:
            polar = list(zip(polar_r[idx], polar_t[idx]))
        modulus, absolute, hp_ratio = _hp_modulus_ratio(ph, polar)
        # Equality needs an exact point; float points must beat 1 by more than eps.
        threshold = 1 - HP_EQUALITY if structured_point else 1 + eps
        if hp_ratio < threshold:
            if hp_ratio >= 1 - eps:
                near_equality += 1
            continue
        point = [[float(c.real), float(c.imag)] for c in Z[idx]]
        witness = {
            "point": point,
            "chart_polar": [[r, t] for r, t in polar],
            "modulus": modulus,
            "modulus_of_orthant_value": absolute,
            "ratio": hp_ratio,
            "orbit_residual": float(residual[idx]),
        }
        flags = [EQUALITY_TYPE] if abs(hp_ratio - 1) <= eps or modulus == absolute else []
        return Verdict.counterexample(witness, flags=flags, **stats)
    verdict = Verdict.inconclusive(**stats)
    if stats["near_orbit_hits"]:
        verdict.flag(NEAR_ORBIT)
    if near_equality:
        verdict.stats["near_equality"] = int(near_equality)
        verdict.flag(BORDERLINE)
    return verdict


def pos3_certificate(ph: HomogenizedPolynomial, fan: NormalFan,
                     full: Optional[FullPositivity] = None) -> bool:
    """Fully positive p whose full chart restrictions all have spanning supports."""
    if ph.source is None:
        return False
    full = full if full is not None else is_fully_positive(ph.source)
    if not full:
        return False
    return all(lattice_span_check(chart_restriction(ph, cone)) for cone in fan.cones)


def check_pos3(ph: HomogenizedPolynomial, fan: NormalFan, cfg: SamplerConfig,
               lattice: Optional[RelationLattice] = None,
               full: Optional[FullPositivity] = None) -> Verdict:
    """|p~(z)| < p~(|z|) off Z(Sigma) and off the unitary G-orbit of the orthant."""
    if pos3_certificate(ph, fan, full):
        return Verdict.certified("fully-positive-span")
    tasks = [lambda c=c: _pos3_chart(ph, fan, c, cfg) for c in fan.cones]
    parts = _run_tasks(tasks, cfg)
    verdict = combine(parts, [{"cone": c.index} for c in fan.cones])
    ratios = [p.stats.get("best_ratio") for p in parts if p.stats.get("best_ratio") is not None]
    if ratios:
        verdict.stats["best_ratio"] = max(ratios)
    verdict.stats["skipped_in_orbit"] = sum(p.stats.get("skipped_in_orbit", 0) for p in parts)
    logger.info("Pos3: %s", verdict.status.value)
    return verdict


# -- k0 search -------------------------------------------------------------

@dataclass
class K0Result:
    found: bool
    k0: Optional[int]
    k_max: int
    bitmap: List[bool]
    partial: bool = False
    first_failures: Dict[int, Dict] = field(default_factory=dict)

    @property
    def label(self) -> str:
        if self.found:
            return f"FoundAt({self.k0})"
        return f"NoneUpTo({self.k_max})"

    def to_dict(self) -> Dict:
        data = {"result": "FoundAt" if self.found else "NoneUpTo",
                "k_max": self.k_max,
                "bitmap": "".join("1" if b else "0" for b in self.bitmap),
                "partial": self.partial}
        if self.found:
            data["k0"] = self.k0
        if self.first_failures:
            data["first_failures"] = {str(k): v for k, v in sorted(self.first_failures.items())}
        return data


def find_k0(p: LaurentPolynomial, k_max: int, budget: Optional[int] = None,
            polytope: Optional[LatticePolytope] = None) -> K0Result:
    """Smallest k0 with p^k fully positive for every k in [k0, k_max].

    Powers are built incrementally. ``budget`` caps the number of terms of a
    power; once exceeded the search stops and the bitmap is partial.
    """
    if k_max < 1:
        raise ValueError(f"k_max must be at least 1, got {k_max}")
    polytope = polytope or newton_polytope(p)
    bitmap: List[bool] = []
    failures: Dict[int, Dict] = {}
    partial = False
    for k, power in enumerate(p.powers(k_max)):
        if k == 0:
            continue
        if budget is not None and len(power) > budget:
            partial = True
            logger.warning("k0 search stopped at k=%d: %d terms exceed budget %d", k, len(power), budget)
            break
        result = is_fully_positive(power, dilate(polytope, k), max_failures=1)
        bitmap.append(result.fully_positive)
        if not result:
            m, c = result.failures[0]
            failures[k] = {"m": list(m), "c": c}
    reached = len(bitmap)
    k0 = None
    for k in range(reached, 0, -1):
        if not bitmap[k - 1]:
            break
        k0 = k
    return K0Result(found=k0 is not None, k0=k0, k_max=reached if partial else k_max,
                    bitmap=bitmap, partial=partial, first_failures=failures)


# -- pipeline -------------------------------------------------------------

@dataclass
class PositivityReport:
    polynomial: LaurentPolynomial
    polytope: LatticePolytope
    fan: NormalFan
    lattice: RelationLattice
    homogenized: HomogenizedPolynomial
    fully_positive: FullPositivity
    pos1: Verdict
    pos2: Verdict
    pos3: Verdict
    orthant: Verdict
    k0: K0Result
    analysis: Optional[Dict] = None
    flags: List[str] = field(default_factory=list)
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def conditions(self) -> Dict[str, Verdict]:
        return {"pos1": self.pos1, "pos2": self.pos2, "pos3": self.pos3}


def consistency_flags(full: FullPositivity, conditions: Dict[str, Verdict], k0: K0Result) -> List[str]:
    flags = []
    refuted = [name for name, v in conditions.items() if v.refuted]
    if refuted and k0.found:
        flags.append("CONFLICT: " + ",".join(refuted) + " refuted but k0 found")
    if refuted and full.fully_positive:
        flags.append("CONFLICT: fully positive polynomial refuted on " + ",".join(refuted))
    if not refuted and not k0.found:
        flags.append("k0-not-reached-within-k-max")
    pos3 = conditions.get("pos3")
    if pos3 is not None and pos3.refuted and EQUALITY_TYPE in pos3.flags:
        flags.append("pos3-equality-only")
    return flags


def analyze(p: LaurentPolynomial, cfg: Optional[SamplerConfig] = None,
            with_analysis: bool = True) -> PositivityReport:
    """Polytope, smoothness gate, fan, homogenization, Pos1-Pos3, orthant positivity and k0."""
    cfg = cfg or SamplerConfig()
    timings: Dict[str, float] = {}

    def timed(name, func, *args, **kwargs):
        start = time.perf_counter()
        out = func(*args, **kwargs)
        timings[name] = round(time.perf_counter() - start, 6)
        return out

    polytope = timed("polytope", newton_polytope, p)
    fan = timed("fan", build_normal_fan, polytope)
    lattice = timed("relation_lattice", relation_lattice, fan)
    ph = timed("homogenize", homogenize, p, polytope, fan)
    logger.info("smooth polytope with %d vertices; analyzing", len(polytope.vertices))

    full = timed("fully_positive", is_fully_positive, p, polytope)
    pos1 = timed("pos1", check_pos1, ph, fan)
    pos2 = timed("pos2", check_pos2, ph, fan, cfg)
    pos3 = timed("pos3", check_pos3, ph, fan, cfg, lattice, full)
    orthant = timed("orthant", positive_on_orthant, ph, fan, cfg)
    k0 = timed("k0", find_k0, p, cfg.k_max, cfg.term_budget, polytope)

    analysis = None
    if with_analysis and not (pos1.refuted or pos2.refuted or pos3.refuted):
        analysis = timed("analysis", run_analysis, ph, fan, lattice, cfg)

    flags = consistency_flags(full, {"pos1": pos1, "pos2": pos2, "pos3": pos3}, k0)
    for flag in flags:
        if flag.startswith("CONFLICT"):
            logger.warning(flag)
    return PositivityReport(p, polytope, fan, lattice, ph, full, pos1, pos2, pos3,
                            orthant, k0, analysis, flags, timings)
