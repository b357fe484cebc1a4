"""Application services orchestrating the domain."""

from .artifact_layout import (
    ALL_CATEGORIES,
    MATRIX_CATEGORIES,
    TRAIN_CATEGORIES,
    categories_for,
    dataset_dir,
    model_name,
    model_prefix,
)
from .exceptions import (
    ApplicationServiceError,
    ArtifactIOError,
    ConfigurationError,
    MissingArtifactError,
)
from .experiment_evaluator import (
    EvalEpisode,
    ExperimentEvaluator,
    MethodUnderTest,
    build_template_library,
    methods_for_task,
    recompute_report,
)
from .policies import (
    FixedPolicy,
    HeuristicPolicy,
    KeypointPolicy,
    LearnedPolicy,
    MixedPolicy,
    TemplatePolicy,
)
from .self_supervision import SelfSupervisionService, replay_record, run_episode, training_batch
from .statistics import significantly_better, two_proportion_p_value, wilson_interval
from .tool_catalog import ToolCatalogService, tool_seed
from .tool_creation import CreatedTool, ToolCreationService, desired_keypoints

__all__ = [
    "ALL_CATEGORIES",
    "MATRIX_CATEGORIES",
    "TRAIN_CATEGORIES",
    "ApplicationServiceError",
    "ArtifactIOError",
    "ConfigurationError",
    "CreatedTool",
    "EvalEpisode",
    "ExperimentEvaluator",
    "FixedPolicy",
    "HeuristicPolicy",
    "KeypointPolicy",
    "LearnedPolicy",
    "MethodUnderTest",
    "MissingArtifactError",
    "MixedPolicy",
    "SelfSupervisionService",
    "TemplatePolicy",
    "ToolCatalogService",
    "ToolCreationService",
    "build_template_library",
    "categories_for",
    "dataset_dir",
    "methods_for_task",
    "model_name",
    "model_prefix",
    "desired_keypoints",
    "recompute_report",
    "replay_record",
    "run_episode",
    "significantly_better",
    "tool_seed",
    "training_batch",
    "two_proportion_p_value",
    "wilson_interval",
]
