"""CSV, JSONL and plain-text export of loop and evaluation results."""

from __future__ import annotations

import csv
import json
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any

import structlog

from ...core.application.dto.eval_report import REPORT_COLUMNS, EvalReport
from ...core.application.dto.round_summary import ROUND_COLUMNS, RoundSummary
from ...core.application.services.exceptions import ArtifactIOError
from ...core.application.services.experiment_evaluator import EvalEpisode
from ...core.domain.repositories.exceptions import CorruptArtifactError
from ..filesystem.jsonl import read_lines, write_lines


class ReportWriter:
    """Writes the result files of ``collect`` and ``eval``.

    All files are written whole by one call, so a reader never sees a
    partially written report.
    """

    def __init__(self) -> None:
        """Initialize report writer."""
        self._logger = structlog.get_logger(__name__)

    def _write_csv(self, path: Path, header: Sequence[str], rows: Iterable[list[str]]) -> int:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            count = 0
            with path.open("w", newline="", encoding="utf-8") as handle:
                writer = csv.writer(handle, lineterminator="\n")
                writer.writerow(header)
                for row in rows:
                    writer.writerow(row)
                    count += 1
        except OSError as e:
            raise ArtifactIOError(f"Failed to write {path}: {e}", e) from e
        return count

    def write_rounds(self, path: Path, summaries: Sequence[RoundSummary]) -> None:
        """Write per-round success rates to ``rounds.csv``.

        Args:
            path: Destination file
            summaries: Rounds in order; rewritten whole after every round

        Raises:
            ArtifactIOError: If the file cannot be written
        """
        self._write_csv(path, ROUND_COLUMNS, (s.to_row() for s in summaries))

    def write_report(self, path: Path, report: EvalReport) -> None:
        """Write the evaluation cells to ``report.csv``.

        Raises:
            ArtifactIOError: If the file cannot be written
        """
        count = self._write_csv(path, REPORT_COLUMNS, (c.to_row() for c in report.cells))
        self._logger.info("Report written", extra={"path": str(path), "cells": count})

    def write_episodes(self, path: Path, episodes: Sequence[EvalEpisode]) -> None:
        """Write one JSON line per evaluation episode.

        Raises:
            ArtifactIOError: If the file cannot be written
        """
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            write_lines(path, (ep.to_dict() for ep in episodes))
        except OSError as e:
            raise ArtifactIOError(f"Failed to write {path}: {e}", e) from e

    def read_episodes(self, path: Path) -> list[EvalEpisode]:
        """Load evaluation episodes written by ``write_episodes``.

        Raises:
            ArtifactIOError: If the file is missing or unreadable
        """
        try:
            rows = read_lines(path)
            return [EvalEpisode.from_dict(row) for row in rows]
        except OSError as e:
            raise ArtifactIOError(f"Failed to read {path}: {e}", e) from e
        except (CorruptArtifactError, KeyError, TypeError, ValueError) as e:
            raise ArtifactIOError(f"Unreadable episodes file {path}: {e}", e) from e

    @staticmethod
    def format_text(report: EvalReport) -> str:
        """Human-readable summary: rates, 2x2 category matrices and timings."""
        lines = ["Success rates (Wilson 95% interval)", ""]
        for cell in report.cells:
            lines.append(
                f"{cell.method:<10} {cell.task:<10} train={cell.train_category:<10} "
                f"test={cell.test_category:<10} {cell.successes:>5}/{cell.episodes:<5} "
                f"{cell.rate:6.3f} [{cell.ci_low:.3f}, {cell.ci_high:.3f}]"
            )

        pairs = sorted({(c.method, c.task) for c in report.cells})
        for method, task in pairs:
            matrix = report.matrix(method, task)
            trains = sorted({k[0] for k in matrix})
            tests = sorted({k[1] for k in matrix})
            if len(tests) < 2:
                continue
            lines += ["", f"{method} / {task}: train category (rows) x test category (columns)"]
            lines.append(" " * 12 + "".join(f"{t:>12}" for t in tests))
            for train in trains:
                cells = [matrix.get((train, t)) for t in tests]
                values = "".join(f"{c.rate:>12.3f}" if c else f"{'-':>12}" for c in cells)
                lines.append(f"{train:<12}{values}")

        if report.timings:
            lines += ["", "Seconds per episode"]
            for t in report.timings:
                lines.append(
                    f"{t.method:<10} n={t.episodes:<6} mean={t.mean:.4f} "
                    f"median={t.median:.4f} p95={t.p95:.4f}"
                )
        return "\n".join(lines) + "\n"

    def write_text(self, path: Path, report: EvalReport) -> None:
        """Write ``format_text`` output.

        Raises:
            ArtifactIOError: If the file cannot be written
        """
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(self.format_text(report), encoding="utf-8")
        except OSError as e:
            raise ArtifactIOError(f"Failed to write {path}: {e}", e) from e

    def write_json(self, path: Path, data: dict[str, Any]) -> None:
        """Write one pretty-printed JSON document.

        Raises:
            ArtifactIOError: If the file cannot be written
        """
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")
        except OSError as e:
            raise ArtifactIOError(f"Failed to write {path}: {e}", e) from e
