"""ModelRepository interface."""

from __future__ import annotations

from abc import ABC, abstractmethod

from ..value_objects.learning import HeadKind, NetParams


class ModelRepository(ABC):
    """Repository interface for trained network heads."""

    @abstractmethod
    def save(self, name: str, params: NetParams) -> None:
        """Persist a head under a name.

        Args:
            name: Model name, unique within the store
            params: Parameters to store

        Raises:
            RepositoryError: If persistence fails
        """

    @abstractmethod
    def load(self, name: str, kind: HeadKind) -> NetParams:
        """Retrieve a head by name.

        Args:
            name: Model name
            kind: Expected head kind

        Returns:
            Stored parameters

        Raises:
            ArtifactNotFoundError: If no model has that name
            CorruptArtifactError: If the file is unreadable or of another kind
        """

    @abstractmethod
    def exists(self, name: str) -> bool:
        """Check whether a model is stored under ``name``."""
