"""Filesystem implementation of EpisodeDatasetRepository."""

from __future__ import annotations

import hashlib
import threading
from collections.abc import Sequence
from pathlib import Path

import structlog

from ....core.domain.repositories.episode_dataset_repository import EpisodeDatasetRepository
from ....core.domain.repositories.exceptions import (
    CorruptArtifactError,
    OrdinalMismatchError,
    RepositoryError,
)
from ....core.domain.value_objects.episode import EpisodeRecord
from ....core.domain.value_objects.geometry import PointCloud
from ...io.cloud_codec import append_clouds, read_clouds
from ..jsonl import read_lines, write_lines

RECORDS_FILE = "records.jsonl"
CLOUDS_FILE = "clouds.keto"
MANIFEST_FILE = "manifest.txt"


def file_sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with path.open("rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


class EpisodeDatasetRepositoryImpl(EpisodeDatasetRepository):
    """Append-only dataset directory.

    ``records.jsonl`` holds one EpisodeRecord per line, ``clouds.keto`` the
    observed clouds in ordinal order and ``manifest.txt`` the configuration
    echo plus SHA-256 hashes of both files. Appends are serialized through
    one lock, so this object is the single writer of the directory.
    """

    def __init__(self, directory: Path | str) -> None:
        """Initialize repository.

        Args:
            directory: Dataset directory; created on first append
        """
        self._dir = Path(directory)
        self._lock = threading.Lock()
        self._count: int | None = None
        self._logger = structlog.get_logger(__name__)

    @property
    def directory(self) -> Path:
        return self._dir

    @property
    def records_path(self) -> Path:
        return self._dir / RECORDS_FILE

    @property
    def clouds_path(self) -> Path:
        return self._dir / CLOUDS_FILE

    @property
    def manifest_path(self) -> Path:
        return self._dir / MANIFEST_FILE

    def append(self, records: Sequence[EpisodeRecord], clouds: Sequence[PointCloud]) -> None:
        if len(records) != len(clouds):
            raise RepositoryError(f"{len(records)} records but {len(clouds)} clouds")
        with self._lock:
            base = self.record_count()
            for i, rec in enumerate(records):
                if rec.cloud_ordinal != base + i:
                    raise OrdinalMismatchError(base + i, rec.cloud_ordinal)
            try:
                self._dir.mkdir(parents=True, exist_ok=True)
                stored = append_clouds(self.clouds_path, clouds)
                write_lines(self.records_path, (r.to_dict() for r in records), append=True)
            except OSError as e:
                raise RepositoryError(f"Failed to append to dataset: {e}", e) from e
            self._count = base + len(records)
            if stored != self._count:
                raise CorruptArtifactError(
                    str(self.clouds_path), f"{stored} clouds for {self._count} records"
                )
        self._logger.debug(
            "Dataset appended", extra={"records": len(records), "total": self._count}
        )

    def load_records(self) -> list[EpisodeRecord]:
        if not self.records_path.exists():
            return []
        try:
            rows = read_lines(self.records_path)
        except OSError as e:
            raise RepositoryError(f"Failed to read records: {e}", e) from e
        records = []
        for number, row in enumerate(rows, start=1):
            try:
                records.append(EpisodeRecord.from_dict(row))
            except (KeyError, TypeError, ValueError) as e:
                raise CorruptArtifactError(str(self.records_path), f"line {number}: {e}") from e
        return records

    def load_clouds(self) -> list[PointCloud]:
        if not self.clouds_path.exists():
            return []
        try:
            return read_clouds(self.clouds_path)
        except OSError as e:
            raise RepositoryError(f"Failed to read clouds: {e}", e) from e

    def record_count(self) -> int:
        if self._count is None:
            if not self.records_path.exists():
                self._count = 0
            else:
                with self.records_path.open(encoding="utf-8") as handle:
                    self._count = sum(1 for line in handle if line.strip())
        return self._count

    def write_manifest(self, config_echo: str) -> None:
        lines = [config_echo.rstrip("\n"), ""] if config_echo else []
        lines.append(f"records {self.record_count()}")
        try:
            for path in (self.records_path, self.clouds_path):
                if path.exists():
                    lines.append(f"sha256 {path.name} {file_sha256(path)}")
            self._dir.mkdir(parents=True, exist_ok=True)
            self.manifest_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        except OSError as e:
            raise RepositoryError(f"Failed to write manifest: {e}", e) from e
        self._logger.info("Dataset manifest written", extra={"path": str(self.manifest_path)})
