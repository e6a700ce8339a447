"""JSON report envelope and a deterministic encoder for every stage result."""

import json
import math
from dataclasses import is_dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from .config import SamplerConfig
from .expr_parser import format_polynomial

SCHEMA_VERSION = "1.0"
TOOL_VERSION = "1.0.0"


def to_jsonable(obj: Any) -> Any:
    """Plain JSON values: rationals as "a/b" (integers stay integers), complex as [re, im]."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(obj, (complex, np.complexfloating)):
        return [to_jsonable(obj.real), to_jsonable(obj.imag)]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(x) for x in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(x) for x in items]
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if is_dataclass(obj):
        return to_jsonable(obj.__dict__)
    raise TypeError(f"cannot encode {type(obj).__name__} as JSON")


def dumps(data: Dict, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(to_jsonable(data), sort_keys=True, indent=2, ensure_ascii=False)
    return json.dumps(to_jsonable(data), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def envelope(command: str, expression: Optional[str], variables: Optional[Sequence[str]],
             cfg: Optional[SamplerConfig], result: Dict, timings: Optional[Dict] = None) -> Dict:
    data = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": TOOL_VERSION,
        "command": command,
        "status": "ok",
        "input": {"expression": expression, "variables": list(variables or [])},
        "result": result,
    }
    if cfg is not None:
        data["seed"] = cfg.seed
        data["config"] = cfg.to_dict()
    if timings:
        data["timings"] = timings
    return data


def error_envelope(command: str, exc: Exception, rejected: bool) -> Dict:
    detail = exc.to_dict() if hasattr(exc, "to_dict") else {"kind": "internal", "message": str(exc)}
    return {"schema_version": SCHEMA_VERSION, "tool_version": TOOL_VERSION, "command": command,
            "status": "rejected" if rejected else "error", "error": detail}


def coefficient_listing(p) -> List[Dict]:
    return [{"m": list(m), "c": c} for m, c in p.items()]


def report_to_dict(report, variables: Sequence[str]) -> Dict:
    """Everything in a PositivityReport except wall-clock timings."""
    p = report.polynomial
    data = {
        "polynomial": format_polynomial(p, variables),
        "newton_polytope": report.polytope.to_dict(),
        "fan": report.fan.to_dict(),
        "relation_lattice": report.lattice.to_dict(),
        "homogenized": {"terms": len(report.homogenized.terms),
                        "polynomial": format_polynomial(report.homogenized.polynomial,
                                                        [f"z{i}" for i in range(report.fan.ray_count)])},
        "fully_positive": report.fully_positive.to_dict(),
        "pos1": report.pos1.to_dict(),
        "pos2": report.pos2.to_dict(),
        "pos3": report.pos3.to_dict(),
        "positive_on_orthant": report.orthant.to_dict(),
        "k0": report.k0.to_dict(),
        "flags": list(report.flags),
    }
    if report.analysis is not None:
        data["analysis"] = report.analysis
    return data


def summary_lines(report) -> List[str]:
    """Short human summary used by the CLI progress output and the PDF report."""
    lines = [
        f"Fully positive: {'yes' if report.fully_positive else 'no'}",
        f"Pos1: {report.pos1.status.value}",
        f"Pos2: {report.pos2.status.value}",
        f"Pos3: {report.pos3.status.value}",
        f"Positive on orthant: {report.orthant.status.value}",
        f"k0: {report.k0.label}",
    ]
    lines.extend(f"Flag: {flag}" for flag in report.flags)
    return lines
