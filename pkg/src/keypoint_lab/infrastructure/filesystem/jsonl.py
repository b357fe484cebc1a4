"""Line-delimited JSON helpers shared by the file stores."""

from __future__ import annotations

import json
from collections.abc import Iterable
from pathlib import Path
from typing import Any

from ...core.domain.repositories.exceptions import CorruptArtifactError


def dump_line(data: dict[str, Any]) -> str:
    """Compact JSON line, keys in insertion order, no trailing newline."""
    return json.dumps(data, separators=(",", ":"), allow_nan=False)


def write_lines(path: Path, rows: Iterable[dict[str, Any]], append: bool = False) -> int:
    """Write one JSON object per line; returns the number of lines written."""
    count = 0
    with path.open("a" if append else "w", encoding="utf-8", newline="\n") as handle:
        for row in rows:
            handle.write(dump_line(row) + "\n")
            count += 1
    return count


def read_lines(path: Path) -> list[dict[str, Any]]:
    """Parse every non-empty line of ``path``.

    Raises:
        CorruptArtifactError: If a line is not a JSON object
    """
    rows = []
    with path.open(encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as e:
                raise CorruptArtifactError(str(path), f"line {number}: {e.msg}") from e
            if not isinstance(row, dict):
                raise CorruptArtifactError(str(path), f"line {number}: not an object")
            rows.append(row)
    return rows
