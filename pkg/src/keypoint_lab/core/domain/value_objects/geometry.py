"""Geometric value objects: point clouds, planar poses and segments."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

FloatArray = NDArray[np.float64]


def normalize_angle(theta: float) -> float:
    """Map an angle to the half-open interval (-pi, pi]."""
    wrapped = math.remainder(theta, 2.0 * math.pi)
    if wrapped <= -math.pi:
        wrapped += 2.0 * math.pi
    return wrapped


def rotation_matrix(theta: float) -> FloatArray:
    """Planar counter-clockwise rotation by theta."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]], dtype=np.float64)


@dataclass(frozen=True, eq=False)
class PointCloud:
    """Sampled 3D surface points of a tool, in meters.

    The coordinate array is copied on construction and made read-only, so a
    cloud can be shared freely between threads. z is height above the table.
    """

    points: FloatArray

    def __post_init__(self) -> None:
        """Validate shape, finiteness and height."""
        array = np.array(self.points, dtype=np.float64, copy=True)
        if array.size == 0:
            array = array.reshape(0, 3)
        if array.ndim != 2 or array.shape[1] != 3:
            raise ValueError(f"points must have shape (M, 3), got {array.shape}")
        if not np.all(np.isfinite(array)):
            raise ValueError("points must be finite")
        if np.any(array[:, 2] < 0.0):
            raise ValueError("z coordinates must be non-negative")
        array.setflags(write=False)
        object.__setattr__(self, "points", array)

    @classmethod
    def from_xy(cls, xy: ArrayLike, z: float = 0.0) -> PointCloud:
        """Build a flat cloud at constant height from planar coordinates."""
        planar = np.asarray(xy, dtype=np.float64).reshape(-1, 2)
        heights = np.full((planar.shape[0], 1), z, dtype=np.float64)
        return cls(np.hstack([planar, heights]))

    @property
    def count(self) -> int:
        """Number of points M."""
        return int(self.points.shape[0])

    @property
    def xy(self) -> FloatArray:
        """Planar projection of the cloud."""
        return self.points[:, :2]

    def centroid_xy(self) -> FloatArray:
        """Planar centroid."""
        return np.asarray(self.points[:, :2].mean(axis=0))

    def quantized(self) -> PointCloud:
        """Round coordinates to 32-bit precision, the precision clouds are stored at."""
        return PointCloud(self.points.astype(np.float32).astype(np.float64))

    def concat(self, other: PointCloud) -> PointCloud:
        """Concatenate two clouds, preserving point order."""
        return PointCloud(np.vstack([self.points, other.points]))

    def equals(self, other: object) -> bool:
        """Value-based equality comparison (bit-exact coordinates)."""
        if not isinstance(other, PointCloud):
            return False
        return bool(np.array_equal(self.points, other.points))


@dataclass(frozen=True)
class PlanarPose:
    """SE(2) configuration: position in meters, heading in radians."""

    x: float
    y: float
    theta: float = 0.0

    def __post_init__(self) -> None:
        """Validate finiteness and normalize the heading."""
        if not all(math.isfinite(v) for v in (self.x, self.y, self.theta)):
            raise ValueError("pose components must be finite")
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        object.__setattr__(self, "theta", normalize_angle(float(self.theta)))

    @classmethod
    def identity(cls) -> PlanarPose:
        """The zero pose."""
        return cls(0.0, 0.0, 0.0)

    @property
    def position(self) -> FloatArray:
        """(x, y) as an array."""
        return np.array([self.x, self.y], dtype=np.float64)

    def apply(self, xy: ArrayLike) -> FloatArray:
        """Map planar points from this pose's frame to the parent frame."""
        planar = np.asarray(xy, dtype=np.float64)
        return np.asarray(planar @ rotation_matrix(self.theta).T + self.position)

    def to_dict(self) -> dict[str, float]:
        """Serialize to dictionary."""
        return {"x": self.x, "y": self.y, "theta": self.theta}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> PlanarPose:
        """Create pose from dictionary data."""
        return cls(x=data["x"], y=data["y"], theta=data.get("theta", 0.0))


@dataclass(frozen=True)
class Segment2:
    """Planar segment between two distinct points."""

    a: tuple[float, float]
    b: tuple[float, float]
    _direction: FloatArray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        a = (float(self.a[0]), float(self.a[1]))
        b = (float(self.b[0]), float(self.b[1]))
        delta = np.subtract(b, a)
        length = float(np.hypot(delta[0], delta[1]))
        if not length > 0.0:
            raise ValueError("segment endpoints must be distinct")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "_direction", delta / length)

    @property
    def length(self) -> float:
        return float(np.hypot(self.b[0] - self.a[0], self.b[1] - self.a[1]))

    @property
    def direction(self) -> FloatArray:
        """Unit vector from a to b."""
        return self._direction.copy()

    @property
    def normal(self) -> FloatArray:
        """Unit vector a quarter turn counter-clockwise of the direction."""
        d = self._direction
        return np.array([-d[1], d[0]])

    def point_at(self, fraction: float) -> FloatArray:
        """Point at the given fraction of the way from a to b."""
        return np.asarray(self.a) + fraction * (np.asarray(self.b) - np.asarray(self.a))

    def distance_to_line(self, xy: ArrayLike) -> FloatArray:
        """Unsigned perpendicular distance of points to the supporting line."""
        offsets = np.asarray(xy, dtype=np.float64) - np.asarray(self.a)
        return np.asarray(np.abs(offsets @ self.normal))
