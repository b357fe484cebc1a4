"""Tests for dependency injection container implementation."""

from pathlib import Path
from unittest.mock import patch

import pytest
from dependency_injector import providers

from keypoint_lab.core.application.services.self_supervision import SelfSupervisionService
from keypoint_lab.core.application.services.tool_catalog import ToolCatalogService
from keypoint_lab.infrastructure.app_composition_container import Container
from keypoint_lab.infrastructure.filesystem.repositories import (
    EpisodeDatasetRepositoryImpl,
    ModelRepositoryImpl,
)


class TestContainer:
    """Test Container dependency injection setup."""

    @pytest.fixture
    def container(self):
        """Create Container instance for testing."""
        with patch.dict("os.environ", {"KETO_THREADS": "2"}):
            return Container()

    def test_container_has_all_required_providers(self, container):
        """Test that Container has all expected providers."""
        for name in (
            "config",
            "logging_setup",
            "output_dir",
            "tool_catalog_repository",
            "model_repository",
            "episode_dataset_repository",
            "report_writer",
            "svg_renderer",
            "tool_catalog_service",
            "self_supervision_service",
            "tool_creation_service",
            "experiment_evaluator",
        ):
            assert hasattr(container, name)

    def test_provider_types(self, container):
        """Test singleton, resource and factory providers."""
        assert isinstance(container.config, providers.Singleton)
        assert isinstance(container.logging_setup, providers.Resource)
        assert isinstance(container.model_repository, providers.Singleton)
        assert isinstance(container.episode_dataset_repository, providers.Factory)
        assert isinstance(container.self_supervision_service, providers.Factory)

    def test_config_reads_environment(self, container):
        """Test that settings come from KETO_ variables."""
        with patch.dict("os.environ", {"KETO_THREADS": "2"}):
            assert container.config().threads == 2

    def test_stores_rooted_at_output_dir(self, container, tmp_path: Path):
        """Test that the output directory override reaches the stores."""
        container.output_dir.override(providers.Object(tmp_path))

        models = container.model_repository()
        catalog_service = container.tool_catalog_service()

        assert isinstance(models, ModelRepositoryImpl)
        assert models.path_for("m").parent == tmp_path / "models"
        assert isinstance(catalog_service, ToolCatalogService)

    def test_self_supervision_takes_dataset_at_call_time(self, container, tmp_path: Path):
        """Test building the loop service for one dataset directory."""
        container.output_dir.override(providers.Object(tmp_path))
        dataset = container.episode_dataset_repository(tmp_path / "datasets" / "x")

        service = container.self_supervision_service(dataset_repository=dataset)

        assert isinstance(dataset, EpisodeDatasetRepositoryImpl)
        assert isinstance(service, SelfSupervisionService)
