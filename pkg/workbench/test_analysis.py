#!/usr/bin/env python3
"""Test the convexity toolkit on chart restrictions"""

import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import numpy as np
import pytest

from engine.analysis import (check_pd_on_samples, finite_difference_hessian, hessian_log_fsharp, is_positive_definite,
                             j_matrix, lattice_span_check, log_convexity_gap, log_fsharp,
                             monotonicity_and_logconvexity_check, run_analysis, sgcs_sample_check)
from engine.config import SamplerConfig
from engine.errors import EvaluationError, NotAPolynomialError
from engine.expr_parser import parse_expression
from engine.fan_group import build_normal_fan, relation_lattice
from engine.homogenize import homogenize
from engine.laurent import LaurentPolynomial
from engine.polytope import lattice_points, newton_polytope
from engine.verdicts import HYPOTHESIS_FAILURE, Status

CFG = SamplerConfig(analysis_samples=200)


def random_fully_positive(rng, ell):
    support = {tuple(int(v) for v in rng.integers(0, 4, size=ell)) for _ in range(int(rng.integers(2, 7)))}
    support.add((0,) * ell)
    hull = newton_polytope(LaurentPolynomial(ell, {m: 1 for m in support}))
    return LaurentPolynomial(ell, {m: int(rng.integers(1, 6)) for m in lattice_points(hull)})


def test_j_matrix_matches_log_hessian():
    rng = np.random.default_rng(3)
    for _ in range(200):
        ell = int(rng.integers(1, 4))
        f = random_fully_positive(rng, ell)
        s = 10.0 ** rng.uniform(-1, 1, size=ell)
        J = j_matrix(f, s).matrix
        H = hessian_log_fsharp(f, np.log(s))
        assert np.max(np.abs(J - H)) <= 1e-10 * max(1.0, np.max(np.abs(H)))
        FD = finite_difference_hessian(log_fsharp(f, np.log(s)), np.log(s))
        assert np.max(np.abs(J - FD)) <= 1e-6 * max(1.0, np.max(np.abs(J)))


def test_j_matrix_is_symmetric():
    f = parse_expression("1 + x1 + x2 + 3*x1*x2^2", ["x1", "x2"])
    assert j_matrix(f, [0.7, 2.5]).asymmetry < 1e-12


def test_j_matrix_needs_positive_value():
    with pytest.raises(EvaluationError):
        j_matrix(parse_expression("1 - x1", ["x1"]), [2.0])


def test_lattice_span_check():
    assert lattice_span_check(parse_expression("1 + x1 + x2", ["x1", "x2"]))
    assert not lattice_span_check(parse_expression("1 + x1^2", ["x1"]))
    assert not lattice_span_check(parse_expression("1 + x1*x2", ["x1", "x2"]))
    assert lattice_span_check(parse_expression("1 + x1^2 + x1^3", ["x1"]))


def test_positive_definite():
    assert is_positive_definite(np.array([[2.0, 0.5], [0.5, 1.0]]))
    assert not is_positive_definite(np.array([[1.0, 2.0], [2.0, 1.0]]))
    assert not is_positive_definite(np.zeros((2, 2)))


def test_pd_check_on_fully_positive_chart():
    f = parse_expression("1 + x1 + x2 + x1*x2", ["x1", "x2"])
    verdict = check_pd_on_samples(f, CFG)
    assert verdict.status is Status.INCONCLUSIVE
    assert verdict.stats["samples"] == CFG.analysis_samples
    assert verdict.stats["min_eigenvalue"] > 0


def test_pd_check_flags_lower_dimensional_support():
    verdict = check_pd_on_samples(parse_expression("1 + x1*x2", ["x1", "x2"]), CFG)
    assert HYPOTHESIS_FAILURE in verdict.flags


def test_monotone_log_convex_sampler():
    f = parse_expression("1 + 2*x1 + x2 + x1*x2", ["x1", "x2"])
    assert not monotonicity_and_logconvexity_check(f, CFG).refuted
    gap = monotonicity_and_logconvexity_check(parse_expression("1 + x1^2", ["x1"]), CFG)
    assert HYPOTHESIS_FAILURE in gap.flags
    with pytest.raises(NotAPolynomialError):
        monotonicity_and_logconvexity_check(parse_expression("x1^-1 + 1 + x1", ["x1"]), CFG)


def test_sampled_failures_are_exact():
    # f(s) < f(0) for 0 < s < 1, and log f(e^t) is concave near t = -inf.
    f = parse_expression("4 - x1 + x1^2", ["x1"])
    verdict = monotonicity_and_logconvexity_check(f, CFG)
    assert verdict.refuted
    witness = verdict.witness
    if witness["kind"] == "monotonicity":
        lo, hi = witness["values"]
        assert isinstance(lo, Fraction) and lo >= hi
        assert f.evaluate(witness["upper_point"]) == hi
    else:
        assert witness["kind"] == "log-convexity"
        assert witness["lhs"] >= witness["rhs"]
        assert f.evaluate(witness["s"]) * f.evaluate(witness["s_prime"]) == witness["rhs"]


def test_log_convexity_gap_and_run_analysis():
    p = parse_expression("1 + x1 + x2", ["x1", "x2"])
    P = newton_polytope(p)
    fan = build_normal_fan(P)
    ph = homogenize(p, P, fan)
    assert log_convexity_gap(ph, [1, 2, 3], [3, 2, 1]) > 0
    assert log_convexity_gap(ph, [1, 2, 3], [2, 4, 6]) == pytest.approx(0)
    result = run_analysis(ph, fan, relation_lattice(fan), CFG)
    assert len(result["charts"]) == 3
    assert all(chart["span_generates_lattice"] for chart in result["charts"])
    assert result["polarized_cauchy_schwarz"]["status"] != "CounterexampleFound"


def test_polarized_cauchy_schwarz_on_simplex():
    # p~ = z0 + z1 + z2 and G is the diagonal C*, so equality means proportional points.
    p = parse_expression("1 + x1 + x2", ["x1", "x2"])
    P = newton_polytope(p)
    fan = build_normal_fan(P)
    ph = homogenize(p, P, fan)
    verdict = sgcs_sample_check(ph, fan, relation_lattice(fan), CFG)
    assert verdict.status is Status.INCONCLUSIVE
    stats = verdict.stats
    assert stats["strict_pairs"] + stats["same_orbit_pairs"] == CFG.analysis_samples
    assert stats["same_orbit_pairs"] >= CFG.analysis_samples // 2 - 10
    assert stats["same_orbit_max_deviation"] <= 1e-9
    assert stats["best_ratio"] < 1


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
