"""Round summary DTO for the self-supervision loop."""

from __future__ import annotations

from dataclasses import dataclass

ROUND_COLUMNS = (
    "task",
    "round",
    "p_heuristic",
    "episodes",
    "successes",
    "rate",
    "dataset_size",
    "dataset_positives",
    "evaluation_retrained",
)


@dataclass(frozen=True)
class RoundSummary:
    """Outcome of one self-supervision round."""

    task: str
    round_index: int
    p_heuristic: float
    episodes: int
    successes: int
    dataset_size: int
    dataset_positives: int
    evaluation_retrained: bool

    @property
    def rate(self) -> float:
        """Success rate of the round's episodes."""
        return self.successes / self.episodes if self.episodes else 0.0

    def to_row(self) -> list[str]:
        """Values in ``ROUND_COLUMNS`` order."""
        return [
            self.task,
            str(self.round_index),
            repr(self.p_heuristic),
            str(self.episodes),
            str(self.successes),
            f"{self.rate:.6f}",
            str(self.dataset_size),
            str(self.dataset_positives),
            "1" if self.evaluation_retrained else "0",
        ]
