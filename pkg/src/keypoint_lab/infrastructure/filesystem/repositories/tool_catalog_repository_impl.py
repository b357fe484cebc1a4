"""Filesystem implementation of ToolCatalogRepository."""

from __future__ import annotations

import json
from collections.abc import Sequence
from pathlib import Path

import structlog

from ....core.domain.repositories.exceptions import (
    ArtifactNotFoundError,
    CorruptArtifactError,
    RepositoryError,
)
from ....core.domain.repositories.tool_catalog_repository import (
    CatalogEntry,
    ToolCatalogRepository,
)
from ....core.domain.value_objects.tool import ToolSpec
from ...io.cloud_codec import read_clouds, write_clouds
from ..jsonl import read_lines, write_lines

TOOLS_FILE = "tools.jsonl"
CLOUDS_FILE = "clouds.keto"
INDEX_FILE = "index.json"


class ToolCatalogRepositoryImpl(ToolCatalogRepository):
    """Stores each split under ``<root>/tools/<split>/``.

    A split directory holds ``tools.jsonl`` (one ToolSpec per line),
    ``clouds.keto`` (clouds in the same order) and ``index.json`` mapping
    tool id to cloud ordinal.
    """

    def __init__(self, root: Path | str) -> None:
        """Initialize repository.

        Args:
            root: Output directory of the experiment
        """
        self._root = Path(root) / "tools"
        self._logger = structlog.get_logger(__name__)

    def _split_dir(self, split: str) -> Path:
        return self._root / split

    def save_split(self, split: str, entries: Sequence[CatalogEntry]) -> None:
        directory = self._split_dir(split)
        index = {entry.spec.id: ordinal for ordinal, entry in enumerate(entries)}
        if len(index) != len(entries):
            raise RepositoryError(f"duplicate tool ids in split '{split}'")
        try:
            directory.mkdir(parents=True, exist_ok=True)
            write_lines(directory / TOOLS_FILE, (e.spec.to_dict() for e in entries))
            write_clouds(directory / CLOUDS_FILE, [e.cloud for e in entries])
            (directory / INDEX_FILE).write_text(
                json.dumps(index, indent=2) + "\n", encoding="utf-8"
            )
        except OSError as e:
            raise RepositoryError(f"Failed to save tool split '{split}': {e}", e) from e
        self._logger.debug("Tool split saved", extra={"split": split, "path": str(directory)})

    def load_split(self, split: str) -> list[CatalogEntry]:
        directory = self._split_dir(split)
        if not self.exists(split):
            raise ArtifactNotFoundError("tool split", str(directory))
        try:
            rows = read_lines(directory / TOOLS_FILE)
            clouds = read_clouds(directory / CLOUDS_FILE)
            index = json.loads((directory / INDEX_FILE).read_text(encoding="utf-8"))
        except OSError as e:
            raise RepositoryError(f"Failed to load tool split '{split}': {e}", e) from e
        except json.JSONDecodeError as e:
            raise CorruptArtifactError(str(directory / INDEX_FILE), e.msg) from e

        if len(rows) != len(clouds):
            raise CorruptArtifactError(
                str(directory), f"{len(rows)} tools but {len(clouds)} clouds"
            )
        entries = []
        for ordinal, row in enumerate(rows):
            try:
                spec = ToolSpec.from_dict(row)
            except (KeyError, TypeError, ValueError) as e:
                raise CorruptArtifactError(str(directory / TOOLS_FILE), f"tool {ordinal}: {e}") from e
            if index.get(spec.id) != ordinal:
                raise CorruptArtifactError(
                    str(directory / INDEX_FILE), f"index disagrees for tool '{spec.id}'"
                )
            entries.append(CatalogEntry(spec, clouds[ordinal]))
        return entries

    def exists(self, split: str) -> bool:
        directory = self._split_dir(split)
        return all((directory / name).is_file() for name in (TOOLS_FILE, CLOUDS_FILE, INDEX_FILE))
