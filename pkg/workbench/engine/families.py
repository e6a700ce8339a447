"""Named polynomial families, with parameters read from content/families.json."""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .errors import InputRejected
from .expr_parser import parse_expression
from .laurent import LaurentPolynomial

FAMILIES_PATH = Path(__file__).parent.parent / "content" / "families.json"


@dataclass
class FamilyMember:
    name: str
    polynomial: LaurentPolynomial
    variables: List[str]
    parameters: Dict = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {"family": self.name, "parameters": dict(self.parameters), "notes": list(self.notes)}


def load_families(path: Optional[Path] = None) -> Dict:
    path = Path(path or FAMILIES_PATH)
    try:
        with open(path, "r") as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputRejected(f"cannot read families from {path}: {exc}") from exc


def admissible_range(ell: int) -> Tuple[int, int]:
    """Open interval (binom(2l, l), 2^(2l-1)) of lambda values for the plambda family."""
    if ell < 1:
        raise InputRejected(f"ell must be at least 1, got {ell}")
    return comb(2 * ell, ell), 2 ** (2 * ell - 1)


def perturbed_binomial(ell: int, lam, index: int = 0, n: int = 1) -> LaurentPolynomial:
    """(1 + x)^(2l) - lambda x^l in variable ``index`` of n."""
    x = LaurentPolynomial.variable(n, index)
    base = (LaurentPolynomial.constant(n) + x).pow(2 * ell)
    return base - LaurentPolynomial.monomial(n, [ell if i == index else 0 for i in range(n)],
                                             Fraction(lam))


def _lambda_notes(ell: int, lambdas) -> List[str]:
    low, high = admissible_range(ell)
    notes = []
    for i, lam in enumerate(lambdas, start=1):
        lam = Fraction(lam)
        if lam == high:
            notes.append(f"lambda{i} = {high} is the limiting case")
        elif not low < lam < high:
            notes.append(f"lambda{i} = {lam} lies outside the admissible range ({low}, {high})")
    return notes


def plambda(ell: int, lambda1, lambda2) -> FamilyMember:
    p = perturbed_binomial(ell, lambda1, 0, 2) * perturbed_binomial(ell, lambda2, 1, 2)
    params = {"ell": ell, "lambda1": Fraction(lambda1), "lambda2": Fraction(lambda2)}
    return FamilyMember("plambda", p, ["x1", "x2"], params, _lambda_notes(ell, [lambda1, lambda2]))


def qlambda(ell: int, lam) -> FamilyMember:
    p = perturbed_binomial(ell, lam)
    return FamilyMember("qlambda", p, ["x1"], {"ell": ell, "lambda": Fraction(lam)},
                        _lambda_notes(ell, [lam]))


def family_polynomial(name: str, families: Optional[Dict] = None, **params) -> FamilyMember:
    """Build a family member; unset parameters take the defaults from families.json."""
    families = families or load_families()
    if name in families.get("named", {}):
        entry = families["named"][name]
        p = parse_expression(entry["expression"], entry["variables"])
        return FamilyMember(name, p, list(entry["variables"]), notes=[entry.get("note", "")])
    if name not in families or name == "named":
        known = sorted(k for k in families if k != "named") + sorted(families.get("named", {}))
        raise InputRejected(f"unknown family {name!r}; known: {', '.join(known)}")
    values = dict(families[name].get("parameters", {}))
    values.update({k: v for k, v in params.items() if v is not None})
    if name == "plambda":
        return plambda(int(values["ell"]), values["lambda1"], values["lambda2"])
    if name == "qlambda":
        return qlambda(int(values["ell"]), values["lambda"])
    raise InputRejected(f"family {name!r} has no builder")
