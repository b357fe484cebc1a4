"""Data transfer objects for the application layer."""

from .eval_report import REPORT_COLUMNS, CellResult, EvalReport, TimingStats
from .loop_result import LoopResult
from .round_summary import ROUND_COLUMNS, RoundSummary

__all__ = [
    "CellResult",
    "EvalReport",
    "LoopResult",
    "REPORT_COLUMNS",
    "ROUND_COLUMNS",
    "RoundSummary",
    "TimingStats",
]
