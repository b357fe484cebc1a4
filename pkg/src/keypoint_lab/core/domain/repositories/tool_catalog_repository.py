"""ToolCatalogRepository interface."""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Sequence
from dataclasses import dataclass

from ..value_objects.geometry import PointCloud
from ..value_objects.tool import ToolSpec


@dataclass(frozen=True)
class CatalogEntry:
    """A generated tool and its rendered tool-frame cloud."""

    spec: ToolSpec
    cloud: PointCloud


class ToolCatalogRepository(ABC):
    """Repository interface for generated tool splits.

    A split ("train" or "test") is written once as a whole and read back in
    the order it was written.
    """

    @abstractmethod
    def save_split(self, split: str, entries: Sequence[CatalogEntry]) -> None:
        """Persist every tool of a split, replacing any previous content.

        Args:
            split: Split name
            entries: Tools with their clouds, in catalog order

        Raises:
            RepositoryError: If persistence fails
        """

    @abstractmethod
    def load_split(self, split: str) -> list[CatalogEntry]:
        """Retrieve a split in catalog order.

        Args:
            split: Split name

        Returns:
            The stored entries

        Raises:
            ArtifactNotFoundError: If the split was never written
            CorruptArtifactError: If stored files disagree
        """

    @abstractmethod
    def exists(self, split: str) -> bool:
        """Check whether a split has been written.

        Args:
            split: Split name

        Returns:
            True if the split can be loaded
        """
