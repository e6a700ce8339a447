"""Three-valued verdicts returned by every checker."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional


class Status(Enum):
    CERTIFIED_TRUE = "CertifiedTrue"
    COUNTEREXAMPLE = "CounterexampleFound"
    INCONCLUSIVE = "Inconclusive"


EQUALITY_TYPE = "equality-type"
HYPOTHESIS_FAILURE = "hypothesis-failure"
BORDERLINE = "borderline"
NEAR_ORBIT = "near-orbit"


@dataclass
class Verdict:
    """Outcome of a semi-decision procedure.

    A certified verdict names its certificate; a counterexample carries a
    witness that was re-verified exactly or at high precision; anything else
    is inconclusive and reports what was tried.
    """

    status: Status
    certificate: Optional[str] = None
    witness: Optional[Dict] = None
    stats: Dict = field(default_factory=dict)
    flags: List[str] = field(default_factory=list)
    parts: List[Dict] = field(default_factory=list)

    @classmethod
    def certified(cls, certificate: str, **stats) -> "Verdict":
        return cls(Status.CERTIFIED_TRUE, certificate=certificate, stats=stats)

    @classmethod
    def counterexample(cls, witness: Dict, flags: Optional[List[str]] = None, **stats) -> "Verdict":
        return cls(Status.COUNTEREXAMPLE, witness=witness, stats=stats, flags=list(flags or []))

    @classmethod
    def inconclusive(cls, **stats) -> "Verdict":
        return cls(Status.INCONCLUSIVE, stats=stats)

    @property
    def refuted(self) -> bool:
        return self.status is Status.COUNTEREXAMPLE

    @property
    def certified_true(self) -> bool:
        return self.status is Status.CERTIFIED_TRUE

    def flag(self, name: str) -> None:
        if name not in self.flags:
            self.flags.append(name)

    def to_dict(self) -> Dict:
        data = {"status": self.status.value}
        if self.certificate:
            data["certificate"] = self.certificate
        if self.witness is not None:
            data["witness"] = self.witness
        if self.stats:
            data["stats"] = self.stats
        if self.flags:
            data["flags"] = sorted(self.flags)
        if self.parts:
            data["parts"] = self.parts
        return data


def combine(parts: Iterable[Verdict], labels: Iterable[Dict]) -> Verdict:
    """Aggregate per-chart verdicts: any refutation wins, certification needs all parts.

    The first refuting part (in chart order) supplies the witness.
    """
    parts = list(parts)
    labels = list(labels)
    summaries = []
    for label, part in zip(labels, parts):
        summary = dict(label)
        summary.update(part.to_dict())
        summary.pop("witness", None)
        summaries.append(summary)

    stats = {
        "samples": sum(p.stats.get("samples", 0) for p in parts),
        "restarts": sum(p.stats.get("restarts", 0) for p in parts),
    }
    margins = [p.stats["best_margin"] for p in parts if "best_margin" in p.stats]
    if margins:
        stats["best_margin"] = min(margins)

    for label, part in zip(labels, parts):
        if part.refuted:
            witness = dict(label)
            witness.update(part.witness or {})
            verdict = Verdict.counterexample(witness, part.flags, **stats)
            verdict.parts = summaries
            return verdict

    if parts and all(p.certified_true for p in parts):
        kinds = sorted({p.certificate for p in parts})
        verdict = Verdict.certified("+".join(kinds), **stats)
    else:
        verdict = Verdict.inconclusive(**stats)
    for p in parts:
        for f in p.flags:
            verdict.flag(f)
    verdict.parts = summaries
    return verdict
