"""
Per-round record of the resampling loops of the embedding engine.

Every verification pass appends one ``ResampleRound``, including passes that
found no bad event, so a trace shows how fast each stage converged.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


@dataclass(frozen=True)
class ResampleRound:
    stage: str  # stage1 | stage3 | final
    round: int
    checked_events: int
    bad_events: int
    resampled_vertices: int
    worst_count: int  # largest count seen by the check, bad or not

    @property
    def bad_fraction(self) -> float:
        return self.bad_events / self.checked_events if self.checked_events else 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "stage": self.stage,
            "round": self.round,
            "checked_events": self.checked_events,
            "bad_events": self.bad_events,
            "resampled_vertices": self.resampled_vertices,
            "worst_count": self.worst_count,
        }


@dataclass
class ResampleTrace:
    rounds: List[ResampleRound] = field(default_factory=list)

    def append(self, record: ResampleRound) -> None:
        self.rounds.append(record)

    def rounds_of(self, stage: str) -> List[ResampleRound]:
        return [r for r in self.rounds if r.stage == stage]

    def total_resamples(self, stage: Optional[str] = None) -> int:
        """Bad events charged against the resample budget."""
        return sum(r.bad_events for r in self.rounds if stage is None or r.stage == stage)

    def to_dict(self) -> Dict[str, Any]:
        by_stage: Dict[str, int] = {}
        for record in self.rounds:
            by_stage[record.stage] = by_stage.get(record.stage, 0) + record.bad_events
        return {
            "resamples_by_stage": by_stage,
            "total_resamples": self.total_resamples(),
            "rounds": [r.to_dict() for r in self.rounds],
        }
