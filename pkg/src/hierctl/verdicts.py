"""Three-valued check results with machine-readable witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

HOLDS = "holds"
VIOLATED = "violated"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Witness:
    """Named strings that replay against the violated definition.

    `strings` maps quantifier names (s, s_prime, e, t, t_prime, word, ...)
    to event sequences. Single events are stored as one-element tuples.
    """

    kind: str
    strings: Mapping[str, tuple[str, ...]]
    note: str = ""

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "strings": {k: list(v) for k, v in self.strings.items()},
            "note": self.note,
        }


@dataclass(frozen=True)
class Verdict:
    outcome: str
    witness: Witness | None = None
    budget: dict | None = None
    detail: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.outcome == HOLDS

    @property
    def violated(self) -> bool:
        return self.outcome == VIOLATED

    @property
    def inconclusive(self) -> bool:
        return self.outcome == INCONCLUSIVE

    @staticmethod
    def make_holds(**detail) -> "Verdict":
        return Verdict(HOLDS, detail=detail)

    @staticmethod
    def make_violated(witness: Witness, **detail) -> "Verdict":
        return Verdict(VIOLATED, witness=witness, detail=detail)

    @staticmethod
    def make_inconclusive(budget: dict, **detail) -> "Verdict":
        return Verdict(INCONCLUSIVE, budget=budget, detail=detail)

    def to_json(self) -> dict:
        out: dict = {"verdict": self.outcome}
        out["witness"] = self.witness.to_json() if self.witness else None
        if self.budget is not None:
            out["budget"] = self.budget
        if self.detail:
            out["detail"] = self.detail
        return out
