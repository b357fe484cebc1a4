"""Composing new tools from separate parts with a trained evaluation head."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import structlog

from ...domain.repositories.exceptions import ArtifactNotFoundError
from ...domain.repositories.model_repository import ModelRepository
from ...domain.services.creator import create_tool
from ...domain.services.geometry import derive_seed
from ...domain.services.toolgen import generate_part, render_cloud
from ...domain.value_objects.creation import CreationOptions, CreationResult, PartPose
from ...domain.value_objects.geometry import PlanarPose, PointCloud, rotation_matrix
from ...domain.value_objects.keypoints import ToolKeypoints
from ...domain.value_objects.learning import HeadKind, NetParams
from ...domain.value_objects.task import TaskKind
from ...domain.value_objects.tool import PartShape, ToolCategory, ToolPart, ToolSpec
from .exceptions import MissingArtifactError

MAX_CREATED_PARTS = 4

# Handle along x through the origin; the head starts off to the side.
STICK = ToolPart(PartShape.BOX, 0.20, 0.015, 0.02, PlanarPose(0.0, 0.0, 0.0))
BLOCK = ToolPart(PartShape.BOX, 0.05, 0.03, 0.02, PlanarPose(0.0, 0.12, 0.0))


def desired_keypoints(task: TaskKind) -> ToolKeypoints:
    """Target keypoints around the stick: grasp near one end, function at the other."""
    grasp = (-0.05, 0.0)
    if task is TaskKind.REACHING:
        return ToolKeypoints.from_direction(grasp, (0.10, 0.0), (1.0, 0.0))
    return ToolKeypoints.from_direction(grasp, (0.09, 0.025), (0.0, 1.0))


@dataclass(frozen=True)
class CreatedTool:
    """Creation trajectory plus the resulting tool as a catalog spec."""

    result: CreationResult
    spec: ToolSpec
    keypoints: ToolKeypoints


def posed_parts(
    parts: Sequence[ToolPart], clouds: Sequence[PointCloud], poses: Sequence[PartPose]
) -> tuple[ToolPart, ...]:
    """Parts moved by their creation poses about their cloud centroids."""
    moved = []
    for part, cloud, pose in zip(parts, clouds, poses, strict=True):
        center = cloud.centroid_xy()
        position = np.array([part.pose.x, part.pose.y])
        offset = np.array([pose.tx, pose.ty])
        placed = rotation_matrix(pose.phi) @ (position - center) + center + offset
        moved.append(part.with_pose(PlanarPose(placed[0], placed[1], part.pose.theta + pose.phi)))
    return tuple(moved)


class ToolCreationService:
    """Loads an evaluation head and runs tool creation on a set of parts."""

    def __init__(self, model_repository: ModelRepository) -> None:
        """Initialize the creation service.

        Args:
            model_repository: Store holding trained evaluation heads
        """
        self._models = model_repository
        self._logger = structlog.get_logger(__name__)

    @staticmethod
    def fixed_parts() -> list[ToolPart]:
        """The stick and block instance."""
        return [STICK, BLOCK]

    @staticmethod
    def random_parts(count: int, seed: int) -> list[ToolPart]:
        """``count`` random parts spread along y so they start apart."""
        if not 1 <= count <= MAX_CREATED_PARTS:
            raise ValueError(f"part count must be in [1, {MAX_CREATED_PARTS}]")
        parts = []
        for i in range(count):
            part = generate_part(derive_seed(seed, i))
            parts.append(part.with_pose(PlanarPose(0.0, 0.12 * i, 0.0)))
        return parts

    @staticmethod
    def render_parts(
        parts: Sequence[ToolPart], points: int, noise_sd: float, seed: int
    ) -> list[PointCloud]:
        """One tool-frame cloud per part."""
        clouds = []
        for i, part in enumerate(parts):
            part_seed = derive_seed(seed, i)
            spec = ToolSpec(f"part-{i}", ToolCategory.NON_HAMMER, (part,), part_seed)
            clouds.append(render_cloud(spec, points, noise_sd, part_seed))
        return clouds

    def load_evaluation(self, name: str) -> NetParams:
        """Load a stored evaluation head.

        Raises:
            MissingArtifactError: If no model has that name
        """
        try:
            return self._models.load(name, HeadKind.EVALUATION)
        except ArtifactNotFoundError as e:
            raise MissingArtifactError(f"evaluation model '{name}' not found; run train", e) from e

    def create(
        self,
        parts: Sequence[ToolPart],
        clouds: Sequence[PointCloud],
        keypoints: ToolKeypoints,
        evaluation: NetParams,
        opts: CreationOptions,
        tool_id: str,
        seed: int,
    ) -> CreatedTool:
        """Arrange the parts to raise the evaluation score of ``keypoints``."""
        result = create_tool(clouds, keypoints, evaluation, opts)
        spec = ToolSpec(
            tool_id, ToolCategory.NON_HAMMER, posed_parts(parts, clouds, result.poses), seed
        )
        self._logger.info(
            "Tool created",
            extra={
                "tool_id": tool_id,
                "initial_score": result.initial_score,
                "final_score": result.final_score,
                "accepted_steps": result.accepted_steps,
                "converged": result.converged,
            },
        )
        return CreatedTool(result=result, spec=spec, keypoints=keypoints)
