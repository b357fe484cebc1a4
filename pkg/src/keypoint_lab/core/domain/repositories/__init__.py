"""Repository interfaces for experiment artifacts."""

from .episode_dataset_repository import EpisodeDatasetRepository
from .exceptions import (
    ArtifactNotFoundError,
    CorruptArtifactError,
    OrdinalMismatchError,
    RepositoryError,
)
from .model_repository import ModelRepository
from .tool_catalog_repository import CatalogEntry, ToolCatalogRepository

__all__ = [
    "ArtifactNotFoundError",
    "CatalogEntry",
    "CorruptArtifactError",
    "EpisodeDatasetRepository",
    "ModelRepository",
    "OrdinalMismatchError",
    "RepositoryError",
    "ToolCatalogRepository",
]
