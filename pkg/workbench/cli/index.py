#!/usr/bin/env python3
"""Eventual positivity workbench - command line front end"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from engine.config import SamplerConfig, load_config
from engine.errors import InputRejected
from engine.expr_parser import format_polynomial, infer_variables, parse_expression
from engine.families import family_polynomial
from engine.fan_group import build_normal_fan, relation_lattice
from engine.homogenize import homogenize
from engine.laurent import LaurentPolynomial
from engine.markov import PolyMatrix, describe, spectral_radius_at, verify_beta_equals
from engine.polytope import is_smooth, newton_polytope
from engine.positivity import analyze, is_fully_positive
from engine.report import coefficient_listing, dumps, envelope, error_envelope, report_to_dict, summary_lines

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_REJECTED = 2

logger = logging.getLogger("workbench.cli")


class EventualPositivityTool:
    """Runs one subcommand and returns its JSON envelope."""

    def __init__(self, cfg: SamplerConfig, quiet: bool = False, timings: bool = False):
        self.cfg = cfg
        self.quiet = quiet
        self.timings = timings

    def _progress(self, message: str) -> None:
        if not self.quiet:
            print(message, file=sys.stderr)

    def resolve_input(self, expression: Optional[str], variables: Optional[List[str]],
                      family: Optional[str] = None, family_params: Optional[Dict] = None):
        """Polynomial, variable order and echo text from an expression or a named family."""
        if family:
            member = family_polynomial(family, **(family_params or {}))
            text = format_polynomial(member.polynomial, member.variables)
            return member.polynomial, member.variables, text, member.to_dict()
        if not expression:
            raise InputRejected("an expression or --family is required")
        variables = variables or infer_variables(expression)
        return parse_expression(expression, variables), variables, expression, None

    def analyze(self, p: LaurentPolynomial, variables: List[str], text: str,
                family: Optional[Dict] = None, pdf: Optional[str] = None,
                with_analysis: bool = True) -> Dict:
        self._progress(f"🌟 Analyzing {text} in {', '.join(variables)}...")
        report = analyze(p, self.cfg, with_analysis=with_analysis)
        for line in summary_lines(report):
            self._progress(f"✅ {line}")
        result = report_to_dict(report, variables)
        if family:
            result["family"] = family
        if pdf:
            from print_report import create_report_pdf
            create_report_pdf(report, variables, pdf)
        return envelope("analyze", text, variables, self.cfg, result,
                        report.timings if self.timings else None)

    def powers(self, p: LaurentPolynomial, variables: List[str], text: str, k: int) -> Dict:
        if k < 0:
            raise InputRejected(f"power must be nonnegative, got {k}")
        self._progress(f"🔢 Expanding ({text})^{k}...")
        power = p.pow(k)
        check = is_fully_positive(power)
        result = {"k": k, "terms": len(power), "coefficients": coefficient_listing(power),
                  "fully_positive": check.fully_positive}
        if not check:
            m, c = check.failures[0]
            result["first_failure"] = {"m": list(m), "c": c}
        return envelope("powers", text, variables, None, result)

    def polytope(self, p: LaurentPolynomial, variables: List[str], text: str) -> Dict:
        P = newton_polytope(p)
        result = P.to_dict()
        if P.is_full_dimensional:
            result["smoothness"] = is_smooth(P).to_dict()
        result["lattice_points"] = len(P.lattice_points())
        return envelope("polytope", text, variables, None, result)

    def fan(self, p: LaurentPolynomial, variables: List[str], text: str) -> Dict:
        fan = build_normal_fan(newton_polytope(p))
        result = fan.to_dict()
        result["relation_lattice"] = relation_lattice(fan).to_dict()
        self._progress(f"✅ {fan.ray_count} rays, {len(fan.cones)} maximal cones")
        return envelope("fan", text, variables, None, result)

    def homogenize(self, p: LaurentPolynomial, variables: List[str], text: str) -> Dict:
        P = newton_polytope(p)
        fan = build_normal_fan(P)
        ph = homogenize(p, P, fan)
        result = ph.to_dict()
        result["rays"] = fan.to_dict()["rays"]
        result["expression"] = format_polynomial(ph.polynomial, [f"z{i}" for i in range(fan.ray_count)])
        return envelope("homogenize", text, variables, None, result)

    def markov(self, matrix_path: str, check_beta: Optional[str], at: Optional[List[float]]) -> Dict:
        A = PolyMatrix.from_json(matrix_path)
        self._progress(f"🔗 {A.size}x{A.size} matrix over {', '.join(A.variables)}")
        result = {"matrix": A.to_dict()}
        result.update(describe(A))
        if at:
            result["spectral_radius"] = {"at": at, "value": spectral_radius_at(A, at)}
        if check_beta:
            target = parse_expression(check_beta, list(A.variables))
            points = np.array([at]) if at else None
            result["beta_check"] = verify_beta_equals(A, target, points=points, cfg=self.cfg).to_dict()
        return envelope("markov", check_beta, list(A.variables), self.cfg, result)


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--vars", help="Comma-separated variable order (default: inferred)")
    common.add_argument("--seed", type=int, help="Random seed")
    common.add_argument("--samples", type=int, help="Samples per chart")
    common.add_argument("--restarts", type=int, help="Optimizer restarts per chart")
    common.add_argument("--eps", type=float, help="Tolerance")
    common.add_argument("--kmax", type=int, help="Largest power searched for k0")
    common.add_argument("--workers", type=int, help="Parallel chart workers")
    common.add_argument("--config", help="JSON file of sampler settings")
    common.add_argument("--output", help="Write JSON here instead of stdout")
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--chart-only", dest="chart_only", action="store_true", default=None,
                      help="Sample Pos2/Pos3 through charts (default)")
    mode.add_argument("--ambient", dest="chart_only", action="store_false",
                      help="Also sample F_rho directly in the ambient orthant")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false", default=False,
                     help="Compact JSON (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true", help="Indented JSON")
    noise = common.add_mutually_exclusive_group()
    noise.add_argument("--verbose", action="store_true", help="Debug logging on stderr")
    noise.add_argument("--quiet", action="store_true", help="No progress lines")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(description="Eventual positivity workbench - powers of Laurent polynomials")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="Run the full positivity pipeline")
    p.add_argument("expression", nargs="?", help="Polynomial expression")
    p.add_argument("--family", help="Named family from content/families.json")
    p.add_argument("--ell", type=int, help="Family parameter l")
    p.add_argument("--lambda1", type=str, help="Family parameter lambda1")
    p.add_argument("--lambda2", type=str, help="Family parameter lambda2")
    p.add_argument("--lambda", dest="lam", type=str, help="Family parameter lambda (qlambda)")
    p.add_argument("--pdf", help="Also render a PDF report")
    p.add_argument("--timings", action="store_true", help="Add wall-clock time per stage")
    p.add_argument("--no-analysis", dest="analysis", action="store_false",
                   help="Skip the convexity analysis stage")

    p = sub.add_parser("powers", parents=[common], help="Coefficients of p^k")
    p.add_argument("expression")
    p.add_argument("k", type=int)

    for name, text in (("polytope", "Newton polytope and smoothness"),
                       ("fan", "Normal fan and relation lattice"),
                       ("homogenize", "Homogenization along the normal fan")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("expression")

    p = sub.add_parser("markov", parents=[common], help="Matrix over Z+[x]: digraph and Perron root")
    p.add_argument("--matrix", required=True, help="JSON 2-D array of expressions")
    p.add_argument("--check-beta", dest="check_beta", help="Compare beta_A with this polynomial")
    p.add_argument("--at", help="Comma-separated positive point for the spectral radius")
    return parser


def _configure_logging(args) -> None:
    level = logging.DEBUG if args.verbose else logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def _split(text: Optional[str]) -> Optional[List[str]]:
    if not text:
        return None
    return [part.strip() for part in text.split(",") if part.strip()]


def _point(text: str) -> List[float]:
    try:
        point = [float(part) for part in _split(text) or []]
    except ValueError:
        raise InputRejected(f"--at expects comma-separated numbers, got {text!r}") from None
    if not point or any(not np.isfinite(v) or v <= 0 for v in point):
        raise InputRejected(f"--at coordinates must be positive and finite, got {text!r}")
    return point


def _run(args) -> Dict:
    cfg = load_config(args.config, seed=args.seed, sample_count=args.samples,
                      restart_count=args.restarts, tolerance=args.eps, k_max=args.kmax,
                      chart_only=args.chart_only, max_workers=args.workers)
    tool = EventualPositivityTool(cfg, quiet=args.quiet, timings=getattr(args, "timings", False))
    variables = _split(args.vars)

    if args.command == "markov":
        at = _point(args.at) if args.at is not None else None
        return tool.markov(args.matrix, args.check_beta, at)

    family_params = None
    if getattr(args, "family", None):
        family_params = {"ell": args.ell, "lambda1": args.lambda1, "lambda2": args.lambda2,
                         "lam": args.lam}
        family_params = {("lambda" if k == "lam" else k): v for k, v in family_params.items()}
    p, variables, text, family = tool.resolve_input(args.expression, variables,
                                                    getattr(args, "family", None), family_params)
    if args.command == "analyze":
        return tool.analyze(p, variables, text, family, args.pdf, args.analysis)
    if args.command == "powers":
        return tool.powers(p, variables, text, args.k)
    return getattr(tool, args.command)(p, variables, text)


def main(argv: Optional[List[str]] = None) -> int:
    """CLI interface; returns the exit code"""
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args)

    try:
        data = _run(args)
        code = EXIT_OK
    except InputRejected as exc:
        data, code = error_envelope(args.command, exc, rejected=True), EXIT_REJECTED
        print(f"Error: {exc}", file=sys.stderr)
    except Exception as exc:
        logger.debug("internal error", exc_info=True)
        data, code = error_envelope(args.command, exc, rejected=False), EXIT_ERROR
        print(f"Error: {exc}", file=sys.stderr)

    text = dumps(data, pretty=args.pretty)
    if args.output and code == EXIT_OK:
        with open(args.output, "w") as f:
            f.write(text + "\n")
        if not args.quiet:
            print(f"✅ Saved to {args.output}", file=sys.stderr)
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
