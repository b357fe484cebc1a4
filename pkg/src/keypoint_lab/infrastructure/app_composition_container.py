"""Dependency injection container for Keypoint Lab."""

from pathlib import Path

from dependency_injector import containers, providers

from keypoint_lab.config.application_config import get_config
from keypoint_lab.core.application.services.experiment_evaluator import ExperimentEvaluator
from keypoint_lab.core.application.services.self_supervision import SelfSupervisionService
from keypoint_lab.core.application.services.tool_catalog import ToolCatalogService
from keypoint_lab.core.application.services.tool_creation import ToolCreationService
from keypoint_lab.infrastructure.filesystem.repositories import (
    EpisodeDatasetRepositoryImpl,
    ModelRepositoryImpl,
    ToolCatalogRepositoryImpl,
)
from keypoint_lab.infrastructure.io.report_writer import ReportWriter
from keypoint_lab.infrastructure.io.svg_renderer import SvgRenderer
from keypoint_lab.infrastructure.logging_setup import configure_logging


class Container(containers.DeclarativeContainer):
    """Wires settings, logging, file stores and application services.

    ``output_dir`` is overridden by the CLI before anything is resolved;
    stores rooted there are singletons for the lifetime of one command.
    Dataset stores and the self-supervision service take the dataset
    directory at call time, since each task has its own.
    """

    config = providers.Singleton(get_config)

    logging_setup = providers.Resource(
        configure_logging,
        config=config,
    )

    output_dir = providers.Object(Path("runs/default"))

    # Infrastructure Layer - Stores
    tool_catalog_repository = providers.Singleton(
        ToolCatalogRepositoryImpl,
        root=output_dir,
    )

    model_repository = providers.Singleton(
        ModelRepositoryImpl,
        root=output_dir,
    )

    episode_dataset_repository = providers.Factory(EpisodeDatasetRepositoryImpl)

    # Infrastructure Layer - Export
    report_writer = providers.Singleton(ReportWriter)

    svg_renderer = providers.Singleton(SvgRenderer)

    # Application Services
    tool_catalog_service = providers.Factory(
        ToolCatalogService,
        catalog_repository=tool_catalog_repository,
    )

    self_supervision_service = providers.Factory(
        SelfSupervisionService,
        model_repository=model_repository,
    )

    tool_creation_service = providers.Factory(
        ToolCreationService,
        model_repository=model_repository,
    )

    experiment_evaluator = providers.Factory(ExperimentEvaluator)
