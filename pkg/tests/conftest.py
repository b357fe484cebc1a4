"""Pytest configuration and shared fixtures."""

import pytest
import structlog

from keypoint_lab.core.domain.repositories.tool_catalog_repository import CatalogEntry
from keypoint_lab.core.domain.value_objects.geometry import PointCloud
from keypoint_lab.core.domain.value_objects.learning import NetParams
from keypoint_lab.core.domain.value_objects.tool import ToolSpec
from tests.quality_gates.fixtures import networks
from tests.quality_gates.fixtures.repositories import (
    InMemoryCatalogRepository,
    InMemoryDatasetRepository,
    InMemoryModelRepository,
)
from tests.quality_gates.fixtures.tools import entry, stick, t_hammer, wide_block


@pytest.fixture(autouse=True)
def reset_structlog():
    """CLI runs bind loggers to a captured stream; start each test unconfigured."""
    yield
    structlog.reset_defaults()
    structlog.contextvars.clear_contextvars()


@pytest.fixture
def hammer_spec() -> ToolSpec:
    """Noise-free T-hammer: 0.20 x 0.014 handle, 0.08 x 0.010 head."""
    return t_hammer()


@pytest.fixture
def hammer_entry(hammer_spec: ToolSpec) -> CatalogEntry:
    return entry(hammer_spec)


@pytest.fixture
def hammer_cloud(hammer_entry: CatalogEntry) -> PointCloud:
    return hammer_entry.cloud


@pytest.fixture
def stick_entry() -> CatalogEntry:
    return entry(stick())


@pytest.fixture
def stick_cloud(stick_entry: CatalogEntry) -> PointCloud:
    return stick_entry.cloud


@pytest.fixture
def block_cloud() -> PointCloud:
    return entry(wide_block()).cloud


@pytest.fixture
def random_evaluation() -> NetParams:
    return networks.random_evaluation()


@pytest.fixture
def fixed_proposal() -> NetParams:
    return networks.fixed_proposal()


@pytest.fixture
def dataset_repository() -> InMemoryDatasetRepository:
    return InMemoryDatasetRepository()


@pytest.fixture
def model_repository() -> InMemoryModelRepository:
    return InMemoryModelRepository()


@pytest.fixture
def catalog_repository() -> InMemoryCatalogRepository:
    return InMemoryCatalogRepository()
