"""Filesystem repository implementations."""

from .episode_dataset_repository_impl import EpisodeDatasetRepositoryImpl
from .model_repository_impl import ModelRepositoryImpl
from .tool_catalog_repository_impl import ToolCatalogRepositoryImpl

__all__ = [
    "EpisodeDatasetRepositoryImpl",
    "ModelRepositoryImpl",
    "ToolCatalogRepositoryImpl",
]
