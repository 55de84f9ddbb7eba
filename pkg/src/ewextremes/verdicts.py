"""Verdict records returned by condition and order checkers.

A verdict never silently discards evidence: even a ``HOLDS`` carries the
worst observed margin and where it occurred, so near-degenerate parameters
remain debuggable.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Optional


class Status(enum.Enum):
    HOLDS = "holds"
    FAILS_AT = "fails_at"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ConditionVerdict:
    """Outcome of a side-condition check (superadditivity, convexity, ...).

    ``margin`` is the worst signed slack: nonnegative everywhere the
    condition held, and the most negative violation otherwise.  ``witness``
    locates that worst point.
    """

    status: Status
    witness: Any = None
    margin: float = float("nan")
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    def to_dict(self) -> dict:
        out = {"status": self.status.value, "margin": self.margin}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class OrderVerdict:
    """Outcome of a stochastic-order check between two distributions."""

    status: Status
    witness_x: Optional[float] = None
    gap: Optional[float] = None
    crossing_x: Optional[float] = None
    grid: dict = field(default_factory=dict)
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    def to_dict(self) -> dict:
        out: dict = {"status": self.status.value}
        if self.witness_x is not None:
            out["witness_x"] = self.witness_x
        if self.gap is not None:
            out["gap"] = self.gap
        if self.crossing_x is not None:
            out["crossing_x"] = self.crossing_x
        if self.note:
            out["note"] = self.note
        return out


def holds(witness=None, margin=float("nan"), note="") -> ConditionVerdict:
    return ConditionVerdict(Status.HOLDS, witness, margin, note)


def fails_at(witness, margin, note="") -> ConditionVerdict:
    return ConditionVerdict(Status.FAILS_AT, witness, margin, note)


def inconclusive(note: str) -> ConditionVerdict:
    return ConditionVerdict(Status.INCONCLUSIVE, None, float("nan"), note)
