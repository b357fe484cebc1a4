"""Task scene, grasp, action and outcome value objects."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np

from .geometry import FloatArray, PlanarPose

GRIPPER_MAX_WIDTH = 0.08
MAX_DRIVE = 0.2


class TaskKind(str, Enum):
    """The three manipulation tasks."""

    HAMMERING = "hammering"
    PUSHING = "pushing"
    REACHING = "reaching"


def _point(value: Any, name: str) -> tuple[float, float]:
    x, y = float(value[0]), float(value[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError(f"{name} must be finite")
    return (x, y)


@dataclass(frozen=True)
class EnvKeypoints:
    """Target and receiver points; x_r - x_t is the desired force direction."""

    target: tuple[float, float]
    receiver: tuple[float, float]

    def __post_init__(self) -> None:
        object.__setattr__(self, "target", _point(self.target, "target"))
        object.__setattr__(self, "receiver", _point(self.receiver, "receiver"))
        if math.hypot(*self.force) == 0.0:
            raise ValueError("receiver must differ from target")

    @property
    def force(self) -> tuple[float, float]:
        """Unnormalized force vector x_r - x_t."""
        return (self.receiver[0] - self.target[0], self.receiver[1] - self.target[1])

    @property
    def direction(self) -> FloatArray:
        """Unit force direction."""
        force = np.asarray(self.force)
        return np.asarray(force / np.linalg.norm(force))

    def translated(self, offset: tuple[float, float]) -> EnvKeypoints:
        dx, dy = offset
        return EnvKeypoints(
            (self.target[0] + dx, self.target[1] + dy),
            (self.receiver[0] + dx, self.receiver[1] + dy),
        )


@dataclass(frozen=True)
class Box2:
    """Axis-aligned rectangle, used for walls, corridors and workspaces."""

    xmin: float
    ymin: float
    xmax: float
    ymax: float

    def __post_init__(self) -> None:
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise ValueError("box must have positive extent")

    def contains_strict(self, xy: FloatArray) -> np.ndarray:
        """Mask of points strictly inside the interior."""
        x, y = xy[..., 0], xy[..., 1]
        return np.asarray(
            (x > self.xmin) & (x < self.xmax) & (y > self.ymin) & (y < self.ymax)
        )

    def contains(self, xy: FloatArray) -> np.ndarray:
        """Mask of points inside or on the boundary."""
        x, y = xy[..., 0], xy[..., 1]
        return np.asarray(
            (x >= self.xmin) & (x <= self.xmax) & (y >= self.ymin) & (y <= self.ymax)
        )

    def translated(self, offset: tuple[float, float]) -> Box2:
        dx, dy = offset
        return Box2(self.xmin + dx, self.ymin + dy, self.xmax + dx, self.ymax + dy)

    def to_list(self) -> list[float]:
        return [self.xmin, self.ymin, self.xmax, self.ymax]

    @classmethod
    def from_list(cls, values: list[float]) -> Box2:
        return cls(*values)


@dataclass(frozen=True)
class TargetDisk:
    """Movable disk pushed by the tool."""

    center: tuple[float, float]
    radius: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", _point(self.center, "center"))
        if not self.radius > 0.0:
            raise ValueError("radius must be positive")


@dataclass(frozen=True)
class TaskScene:
    """Immutable task context: keypoints, obstacles, targets and tool start pose.

    ``corridor`` is the tunnel interior of the reaching task, ``None`` for the
    other tasks. ``required_displacement`` is the per-target success distance.
    """

    kind: TaskKind
    env_keypoints: EnvKeypoints
    walls: tuple[Box2, ...]
    targets: tuple[TargetDisk, ...]
    required_displacement: float
    tool_pose: PlanarPose
    workspace: Box2
    seed: int
    corridor: Box2 | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", TaskKind(self.kind))
        object.__setattr__(self, "walls", tuple(self.walls))
        object.__setattr__(self, "targets", tuple(self.targets))
        if not self.targets:
            raise ValueError("a scene needs at least one target")
        if not self.required_displacement > 0.0:
            raise ValueError("required_displacement must be positive")

    def translated(self, offset: tuple[float, float]) -> TaskScene:
        """Copy of the scene shifted in the plane."""
        dx, dy = offset
        return TaskScene(
            kind=self.kind,
            env_keypoints=self.env_keypoints.translated(offset),
            walls=tuple(w.translated(offset) for w in self.walls),
            targets=tuple(
                TargetDisk((t.center[0] + dx, t.center[1] + dy), t.radius)
                for t in self.targets
            ),
            required_displacement=self.required_displacement,
            tool_pose=PlanarPose(
                self.tool_pose.x + dx, self.tool_pose.y + dy, self.tool_pose.theta
            ),
            workspace=self.workspace.translated(offset),
            seed=self.seed,
            corridor=None if self.corridor is None else self.corridor.translated(offset),
        )


@dataclass(frozen=True)
class GraspPose:
    """Top-down parallel-jaw grasp."""

    position: tuple[float, float]
    theta: float
    width: float
    quality: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "position", _point(self.position, "position"))
        if not math.isfinite(self.theta):
            raise ValueError("theta must be finite")
        if not 0.0 <= self.width <= GRIPPER_MAX_WIDTH:
            raise ValueError(f"width must be in [0, {GRIPPER_MAX_WIDTH}]")
        if not 0.0 <= self.quality <= 1.0:
            raise ValueError("quality must be in [0, 1]")

    def to_list(self) -> list[float]:
        """The three persisted floats: x, y, theta."""
        return [self.position[0], self.position[1], self.theta]


@dataclass(frozen=True)
class ManipAction:
    """Final grasp-point position and tool heading, plus drive along the force.

    ``reference`` is the observed grasp keypoint with the observed heading of
    x_f - x_g; the tool moves rigidly so that the reference lands on
    (``x_T``, ``theta_T``).
    """

    position: tuple[float, float]
    theta: float
    drive: float
    reference: PlanarPose

    def __post_init__(self) -> None:
        object.__setattr__(self, "position", _point(self.position, "position"))
        if not math.isfinite(self.theta):
            raise ValueError("theta must be finite")
        if not 0.0 <= self.drive <= MAX_DRIVE:
            raise ValueError(f"drive must be in [0, {MAX_DRIVE}]")

    def to_list(self) -> list[float]:
        """The four persisted floats: x_T, y_T, theta_T, drive."""
        return [self.position[0], self.position[1], self.theta, self.drive]


@dataclass(frozen=True)
class EpisodeOutcome:
    """Result of executing a grasp and action in a scene."""

    success: bool
    grasp_ok: bool
    collision: bool
    displacement: float
    diagnostics: str = ""

    def __post_init__(self) -> None:
        if self.success and not (self.grasp_ok and not self.collision):
            raise ValueError("success requires a valid grasp and no collision")
