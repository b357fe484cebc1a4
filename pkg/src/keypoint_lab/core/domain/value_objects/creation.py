"""Value objects for composing new tools from parts."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import FloatArray, PointCloud

MAX_PART_TRANSLATION = 0.5


@dataclass(frozen=True)
class PartPose:
    """Planar translation and rotation of one part about its own centroid."""

    tx: float = 0.0
    ty: float = 0.0
    phi: float = 0.0

    def __post_init__(self) -> None:
        if not all(math.isfinite(v) for v in (self.tx, self.ty, self.phi)):
            raise ValueError("part pose must be finite")
        if math.hypot(self.tx, self.ty) > MAX_PART_TRANSLATION + 1e-12:
            raise ValueError(f"translation norm must be <= {MAX_PART_TRANSLATION}")
        object.__setattr__(self, "tx", float(self.tx))
        object.__setattr__(self, "ty", float(self.ty))
        object.__setattr__(self, "phi", float(self.phi))

    def as_array(self) -> FloatArray:
        return np.array([self.tx, self.ty, self.phi], dtype=np.float64)

    @classmethod
    def from_array(cls, values: FloatArray) -> PartPose:
        """Build a pose, projecting the translation onto the allowed disk."""
        tx, ty, phi = (float(v) for v in values)
        norm = math.hypot(tx, ty)
        if norm > MAX_PART_TRANSLATION:
            tx, ty = tx * MAX_PART_TRANSLATION / norm, ty * MAX_PART_TRANSLATION / norm
        return cls(tx, ty, phi)


@dataclass(frozen=True)
class CreationOptions:
    """Gradient-ascent settings for tool creation."""

    max_iters: int = 100
    step: float = 0.05
    tol: float = 1e-4
    max_halvings: int = 20

    def __post_init__(self) -> None:
        if self.max_iters < 0:
            raise ValueError("max_iters must be >= 0")
        if not self.step > 0.0:
            raise ValueError("step must be positive")
        if self.tol < 0.0:
            raise ValueError("tol must be non-negative")


@dataclass(frozen=True, eq=False)
class CreationResult:
    """Outcome of a creation run.

    ``scores`` starts with the initial score and gains one entry per accepted
    step; ``pose_history`` holds the poses after each accepted step.
    """

    poses: tuple[PartPose, ...]
    scores: tuple[float, ...]
    cloud: PointCloud
    converged: bool
    gradient_norm: float
    pose_history: tuple[tuple[PartPose, ...], ...] = ()

    def __post_init__(self) -> None:
        if any(b < a for a, b in zip(self.scores, self.scores[1:], strict=False)):
            raise ValueError("score trajectory must be non-decreasing")

    @property
    def accepted_steps(self) -> int:
        return len(self.scores) - 1

    @property
    def initial_score(self) -> float:
        return self.scores[0]

    @property
    def final_score(self) -> float:
        return self.scores[-1]
