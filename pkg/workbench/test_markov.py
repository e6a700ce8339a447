#!/usr/bin/env python3
"""Test matrices over Z+[x]: entry validation, digraph predicates and beta_A"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import numpy as np
import pytest

from engine.config import SamplerConfig
from engine.errors import (DimensionMismatchError, InputRejected, MatrixEntryError, NotAPolynomialError,
                           SpectralRadiusError)
from engine.expr_parser import parse_expression
from engine.markov import (DIGRAPH_CONVENTION, PolyMatrix, describe, gershgorin_bounds, is_aperiodic,
                           is_irreducible, period, power_matrix, spectral_radius_at, verify_beta_equals)
from engine.verdicts import Status

SWAP = [["0", "x"], ["1", "0"]]


def test_from_rows_infers_variables():
    A = PolyMatrix.from_rows(SWAP)
    assert A.variables == ("x",)
    assert A.size == 2 and A.n == 1
    assert A.to_dict() == {"variables": ["x"], "entries": [["0", "x"], ["1", "0"]]}
    assert np.array_equal(A.evaluate(3.0), np.array([[0.0, 3.0], [1.0, 0.0]]))


def test_from_json_sources(tmp_path):
    path = tmp_path / "matrix.json"
    path.write_text(json.dumps(SWAP))
    assert PolyMatrix.from_json(path) == PolyMatrix.from_rows(SWAP)
    tagged = PolyMatrix.from_json({"variables": ["y", "x"], "entries": [["x + y"]]})
    assert tagged.variables == ("y", "x")
    with pytest.raises(InputRejected):
        PolyMatrix.from_json(tmp_path / "missing.json")
    with pytest.raises(InputRejected):
        PolyMatrix.from_json({"entries": "x"})


@pytest.mark.parametrize("entry", ["x1 - 1", "x1^-1", "1/2", "x1 +", "x2"])
def test_entries_outside_natural_polynomials(entry):
    with pytest.raises(MatrixEntryError) as info:
        PolyMatrix.from_rows([["1", "x1"], [entry, "1"]], ["x1"])
    assert (info.value.row, info.value.col) == (1, 0)
    assert info.value.to_dict()["kind"] == "matrix_entry"


def test_non_square_is_rejected():
    with pytest.raises(InputRejected):
        PolyMatrix.from_rows([["1", "x1"], ["1"]], ["x1"])
    with pytest.raises(InputRejected):
        PolyMatrix.from_rows([], ["x1"])


def test_digraph_predicates():
    swap = PolyMatrix.from_rows(SWAP)
    assert is_irreducible(swap)
    assert period(swap) == 2
    assert not is_aperiodic(swap)

    loop = PolyMatrix.from_rows([["1", "x"], ["1", "0"]])
    assert is_aperiodic(loop)

    triangle = PolyMatrix.from_rows([["1", "1"], ["0", "1"]], ["x"])
    assert not is_irreducible(triangle)
    with pytest.raises(InputRejected):
        period(triangle)

    assert not is_irreducible(PolyMatrix.from_rows([["0"]], ["x"]))


def test_period_of_a_three_cycle():
    cycle = PolyMatrix.from_rows([["0", "x", "0"], ["0", "0", "1"], ["2", "0", "0"]])
    assert period(cycle) == 3
    # A chord 0 -> 0 via a self-loop breaks the period.
    assert period(PolyMatrix.from_rows([["1", "x", "0"], ["0", "0", "1"], ["2", "0", "0"]])) == 1


def test_describe():
    data = describe(PolyMatrix.from_rows(SWAP))
    assert data == {"size": 2, "irreducible": True, "notes": [DIGRAPH_CONVENTION],
                    "period": 2, "aperiodic": False}
    reducible = describe(PolyMatrix.from_rows([["1", "1"], ["0", "1"]], ["x"]))
    assert "period" not in reducible


def test_spectral_radius():
    A = PolyMatrix.from_rows(SWAP)
    assert spectral_radius_at(A, 4) == pytest.approx(2.0, abs=1e-10)
    assert spectral_radius_at(A, [0.25]) == pytest.approx(0.5, abs=1e-10)
    with pytest.raises(InputRejected, match="irreducible"):
        spectral_radius_at(PolyMatrix.from_rows([["0"]], ["x"]), 1.0)
    with pytest.raises(InputRejected, match="irreducible"):
        spectral_radius_at(PolyMatrix.from_rows([["1", "1"], ["0", "1"]], ["x"]), 1.0)
    with pytest.raises(InputRejected):
        spectral_radius_at(A, -1.0)
    with pytest.raises(DimensionMismatchError):
        spectral_radius_at(A, [1.0, 2.0])


def test_spectral_radius_matches_eigenvalues():
    rng = np.random.default_rng(5)
    A = PolyMatrix.from_rows([["1 + x1", "x2", "0"], ["2", "x1*x2", "1"], ["x1^2", "0", "3"]])
    for _ in range(20):
        x = 10.0 ** rng.uniform(-1, 1, size=2)
        expected = max(abs(np.linalg.eigvals(A.evaluate(x))))
        assert spectral_radius_at(A, x) == pytest.approx(expected, rel=1e-9)


def test_power_iteration_budget():
    with pytest.raises(SpectralRadiusError) as info:
        spectral_radius_at(PolyMatrix.from_rows(SWAP), 4, max_iter=1)
    assert (info.value.lower, info.value.upper) == (1.0, 4.0)
    assert gershgorin_bounds(np.array([[1.0, 2.0], [3.0, 4.0]])) == (3.0, 7.0)


def test_beta_of_power_matrix_is_certified():
    q = parse_expression("1 + x1 + x2", ["x1", "x2"])
    A = power_matrix(q, 3)
    assert A.variables == ("x1", "x2")
    verdict = verify_beta_equals(A, q.pow(3))
    assert verdict.certified_true
    assert verdict.certificate == "symbolic-1x1"
    assert verdict.stats["samples"] == 100
    assert verdict.stats["max_relative_deviation"] <= 1e-10


def test_beta_mismatch_gives_counterexample():
    A = PolyMatrix.from_rows(SWAP)
    verdict = verify_beta_equals(A, parse_expression("x", ["x"]))
    assert verdict.refuted
    x = verdict.witness["point"][0]
    assert verdict.witness["beta"] == pytest.approx(np.sqrt(x))
    assert verdict.witness["relative_deviation"] > 1e-10


def test_beta_agreement_on_larger_matrix_stays_inconclusive():
    A = PolyMatrix.from_rows([["1", "x"], ["1", "x"]])
    verdict = verify_beta_equals(A, parse_expression("1 + x", ["x"]), cfg=SamplerConfig(seed=3),
                                 sample_count=20)
    assert verdict.status is Status.INCONCLUSIVE
    assert "agrees-on-samples" in verdict.flags


def test_beta_target_validation():
    A = PolyMatrix.from_rows(SWAP)
    with pytest.raises(NotAPolynomialError):
        verify_beta_equals(A, parse_expression("x^-1", ["x"]))
    with pytest.raises(DimensionMismatchError):
        verify_beta_equals(A, parse_expression("x + y", ["x", "y"]))


def test_explicit_points():
    A = PolyMatrix.from_rows(SWAP)
    verdict = verify_beta_equals(A, parse_expression("2", ["x"]), points=np.array([[4.0]]))
    assert verdict.stats["samples"] == 1
    assert not verdict.refuted


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
