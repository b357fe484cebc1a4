"""Evaluation report DTOs."""

from __future__ import annotations

from dataclasses import dataclass, field

from ...domain.value_objects.tool import ToolCategory

REPORT_COLUMNS = (
    "method",
    "task",
    "train_category",
    "test_category",
    "successes",
    "episodes",
    "rate",
    "ci_low",
    "ci_high",
)


@dataclass(frozen=True)
class CellResult:
    """Success count for one (method, task, train category, test category) cell."""

    method: str
    task: str
    train_category: str
    test_category: str
    successes: int
    episodes: int
    ci_low: float
    ci_high: float

    def __post_init__(self) -> None:
        if not 0 <= self.successes <= self.episodes:
            raise ValueError("successes must be within [0, episodes]")

    @property
    def rate(self) -> float:
        return self.successes / self.episodes if self.episodes else 0.0

    @property
    def key(self) -> tuple[str, str, str, str]:
        return (self.method, self.task, self.train_category, self.test_category)

    def to_row(self) -> list[str]:
        """Values in ``REPORT_COLUMNS`` order."""
        return [
            self.method,
            self.task,
            self.train_category,
            self.test_category,
            str(self.successes),
            str(self.episodes),
            f"{self.rate:.6f}",
            f"{self.ci_low:.6f}",
            f"{self.ci_high:.6f}",
        ]


@dataclass(frozen=True)
class TimingStats:
    """Wall-clock seconds per episode for one method."""

    method: str
    episodes: int
    mean: float
    median: float
    p95: float


@dataclass(frozen=True)
class EvalReport:
    """All evaluation cells plus timing, in deterministic order."""

    cells: tuple[CellResult, ...]
    timings: tuple[TimingStats, ...] = field(default=())

    @property
    def total_episodes(self) -> int:
        return sum(cell.episodes for cell in self.cells)

    def cell(self, method: str, task: str, train_category: str, test_category: str) -> CellResult:
        """Look up one cell.

        Raises:
            KeyError: If the cell was not evaluated
        """
        for cell in self.cells:
            if cell.key == (method, task, train_category, test_category):
                return cell
        raise KeyError((method, task, train_category, test_category))

    def pooled(self, method: str, task: str, train_category: str) -> tuple[int, int]:
        """(successes, episodes) over every test category."""
        matching = [
            c for c in self.cells
            if (c.method, c.task, c.train_category) == (method, task, train_category)
        ]
        return sum(c.successes for c in matching), sum(c.episodes for c in matching)

    def matrix(self, method: str, task: str) -> dict[tuple[str, str], CellResult]:
        """Hammer / non-hammer train x test cells of one method and task.

        Cells trained on "all" categories (or not trained at all) are left out;
        they are read through :meth:`pooled` and :meth:`cell`.
        """
        categories = {category.value for category in ToolCategory}
        return {
            (c.train_category, c.test_category): c
            for c in self.cells
            if c.method == method
            and c.task == task
            and c.train_category in categories
            and c.test_category in categories
        }
