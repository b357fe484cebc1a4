"""Generation and loading of the train/test tool splits."""

from __future__ import annotations

from collections.abc import Sequence

import structlog

from ...domain.repositories.exceptions import ArtifactNotFoundError
from ...domain.repositories.tool_catalog_repository import CatalogEntry, ToolCatalogRepository
from ...domain.services.toolgen import generate_tool, render_cloud
from ...domain.value_objects.tool import ToolCategory
from .exceptions import MissingArtifactError

SPLITS = ("train", "test")
SPLIT_SEED_OFFSET = {"train": 0, "test": 1_000_000}
CATEGORY_SEED_OFFSET = {ToolCategory.HAMMER: 0, ToolCategory.NON_HAMMER: 500_000}


def tool_seed(seed_base: int, split: str, category: ToolCategory, index: int) -> int:
    """Seed of the ``index``-th tool; splits and categories use disjoint ranges."""
    return seed_base + SPLIT_SEED_OFFSET[split] + CATEGORY_SEED_OFFSET[category] + index


class ToolCatalogService:
    """Builds tool splits and serves them to the other services."""

    def __init__(self, catalog_repository: ToolCatalogRepository) -> None:
        """Initialize the catalog service.

        Args:
            catalog_repository: Store for generated splits
        """
        self._catalog = catalog_repository
        self._logger = structlog.get_logger(__name__)

    def build_split(
        self,
        split: str,
        per_category: int,
        points: int,
        noise_sd: float,
        seed_base: int,
    ) -> list[CatalogEntry]:
        """Generate ``per_category`` hammers then non-hammers for one split."""
        if split not in SPLITS:
            raise ValueError(f"unknown split: {split}")
        if per_category < 1:
            raise ValueError("per_category must be >= 1")
        entries = []
        for category in (ToolCategory.HAMMER, ToolCategory.NON_HAMMER):
            for index in range(per_category):
                seed = tool_seed(seed_base, split, category, index)
                spec = generate_tool(category, seed, f"{split}-{category.value}-{index:04d}")
                entries.append(CatalogEntry(spec, render_cloud(spec, points, noise_sd, seed)))
        return entries

    def generate(
        self,
        per_category: int,
        points: int,
        noise_sd: float,
        seed_base: int,
    ) -> dict[str, int]:
        """Generate and store both splits.

        Returns:
            Tool count per split
        """
        counts = {}
        for split in SPLITS:
            entries = self.build_split(split, per_category, points, noise_sd, seed_base)
            self._catalog.save_split(split, entries)
            counts[split] = len(entries)
            self._logger.info(
                "Tool split written", extra={"split": split, "tools": len(entries)}
            )
        return counts

    def load(
        self, split: str, categories: Sequence[ToolCategory] | None = None
    ) -> list[CatalogEntry]:
        """Stored tools of a split, optionally restricted to some categories.

        Raises:
            MissingArtifactError: If the split has not been generated
        """
        try:
            entries = self._catalog.load_split(split)
        except ArtifactNotFoundError as e:
            raise MissingArtifactError(f"tool split '{split}' not found; run gen-tools", e) from e
        if categories is None:
            return entries
        wanted = set(categories)
        return [e for e in entries if e.spec.category in wanted]
