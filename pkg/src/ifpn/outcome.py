"""Three-valued decision outcomes with replayable evidence.

Every checker in this package answers Holds / Refuted / Inconclusive at a
stated finite resolution.  A refutation always carries a witness that can be
re-evaluated against the same resolution; an existential certificate always
carries the concrete choices that made the property pass.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class Verdict(str, Enum):
    HOLDS = "holds"
    REFUTED = "refuted"
    INCONCLUSIVE = "inconclusive"


@dataclass
class DecisionOutcome:
    """Verdict plus the evidence backing it.

    witness: named values of a concrete violation (present iff refuted).
    certificate: existential choices that were validated (present on holds
        for existentially quantified properties).
    resolution: human-readable description of grids and tolerances used.
    detail: short tag, e.g. the failing axiom.
    data: extra structured diagnostics (per-candidate tables, trend info).
    """

    verdict: Verdict
    resolution: str
    witness: dict | None = None
    certificate: dict | None = None
    detail: str = ""
    data: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if (self.verdict is Verdict.REFUTED) != (self.witness is not None):
            raise ValueError("witness must be present exactly when refuted")

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.HOLDS

    @property
    def refuted(self) -> bool:
        return self.verdict is Verdict.REFUTED

    @property
    def inconclusive(self) -> bool:
        return self.verdict is Verdict.INCONCLUSIVE

    def to_dict(self) -> dict:
        out: dict = {"verdict": self.verdict.value, "resolution": self.resolution}
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = self.witness
        if self.certificate is not None:
            out["certificate"] = self.certificate
        if self.data:
            out["data"] = self.data
        return out


def holds(resolution: str, certificate: dict | None = None, **data) -> DecisionOutcome:
    return DecisionOutcome(
        Verdict.HOLDS, resolution, certificate=certificate, data=dict(data)
    )


def refuted(
    resolution: str, witness: dict, detail: str = "", **data
) -> DecisionOutcome:
    return DecisionOutcome(
        Verdict.REFUTED, resolution, witness=witness, detail=detail, data=dict(data)
    )


def inconclusive(resolution: str, detail: str = "", **data) -> DecisionOutcome:
    return DecisionOutcome(
        Verdict.INCONCLUSIVE, resolution, detail=detail, data=dict(data)
    )
