"""EpisodeDatasetRepository interface."""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Sequence

from ..value_objects.episode import EpisodeRecord
from ..value_objects.geometry import PointCloud


class EpisodeDatasetRepository(ABC):
    """Repository interface for the append-only self-supervision dataset.

    Record ``i`` of an append call refers to cloud ``i`` of the same call
    through its ``cloud_ordinal``; ordinals continue the stored sequence.
    """

    @abstractmethod
    def append(self, records: Sequence[EpisodeRecord], clouds: Sequence[PointCloud]) -> None:
        """Append records and their observed clouds.

        Args:
            records: Records whose cloud ordinals continue the stored sequence
            clouds: One cloud per record

        Raises:
            OrdinalMismatchError: If an ordinal does not continue the sequence
            RepositoryError: If persistence fails
        """

    @abstractmethod
    def load_records(self) -> list[EpisodeRecord]:
        """Retrieve all records in append order.

        Returns:
            Stored records (empty if nothing was written)

        Raises:
            CorruptArtifactError: If a line cannot be decoded
        """

    @abstractmethod
    def load_clouds(self) -> list[PointCloud]:
        """Retrieve all clouds in ordinal order.

        Returns:
            Stored clouds (empty if nothing was written)

        Raises:
            CorruptArtifactError: If the sidecar cannot be decoded
        """

    @abstractmethod
    def record_count(self) -> int:
        """Number of stored records."""

    @abstractmethod
    def write_manifest(self, config_echo: str) -> None:
        """Write the configuration echo and content hashes.

        Args:
            config_echo: Text describing the configuration that produced the data

        Raises:
            RepositoryError: If persistence fails
        """
