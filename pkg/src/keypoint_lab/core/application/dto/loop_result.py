"""Loop result DTO."""

from __future__ import annotations

from dataclasses import dataclass

from ...domain.value_objects.learning import NetParams
from .round_summary import RoundSummary


@dataclass(frozen=True)
class LoopResult:
    """Round summaries and the heads trained after the last round."""

    rounds: tuple[RoundSummary, ...]
    proposal: NetParams
    evaluation: NetParams
    record_count: int
    audit_mismatches: tuple[int, ...] = ()

    @property
    def final_rate(self) -> float:
        return self.rounds[-1].rate if self.rounds else 0.0
