"""Domain value objects."""

from .creation import CreationOptions, CreationResult, PartPose
from .episode import EpisodeRecord, LoopConfig, PolicyKind
from .geometry import PlanarPose, PointCloud, Segment2, normalize_angle
from .keypoints import ToolKeypoints
from .learning import HeadKind, Hyper, NetParams, Normalization, TrainBatch
from .qp import ForceSpec, QPProblem, QPSolution
from .task import (
    Box2,
    EnvKeypoints,
    EpisodeOutcome,
    GraspPose,
    ManipAction,
    TargetDisk,
    TaskKind,
    TaskScene,
)
from .tool import PartShape, ToolCategory, ToolPart, ToolSpec

__all__ = [
    "Box2",
    "CreationOptions",
    "CreationResult",
    "EnvKeypoints",
    "EpisodeOutcome",
    "EpisodeRecord",
    "ForceSpec",
    "GraspPose",
    "HeadKind",
    "Hyper",
    "LoopConfig",
    "ManipAction",
    "NetParams",
    "Normalization",
    "PartPose",
    "PartShape",
    "PlanarPose",
    "PointCloud",
    "PolicyKind",
    "QPProblem",
    "QPSolution",
    "Segment2",
    "TargetDisk",
    "TaskKind",
    "TaskScene",
    "ToolCategory",
    "ToolKeypoints",
    "ToolPart",
    "ToolSpec",
    "TrainBatch",
    "normalize_angle",
]
