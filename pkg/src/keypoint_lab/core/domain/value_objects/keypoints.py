"""Tool keypoint value object."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..services.exceptions import ParseError
from .geometry import FloatArray


@dataclass(frozen=True)
class ToolKeypoints:
    """Grasp, function and effect points in the cloud's frame.

    Construction only checks finiteness; the task invariants (on-object,
    unit effect direction, separation) are checked by ``validate_keypoints``.
    """

    grasp: tuple[float, float]
    function: tuple[float, float]
    effect: tuple[float, float]

    def __post_init__(self) -> None:
        for name in ("grasp", "function", "effect"):
            raw = getattr(self, name)
            point = (float(raw[0]), float(raw[1]))
            if not (math.isfinite(point[0]) and math.isfinite(point[1])):
                raise ValueError(f"{name} point must be finite")
            object.__setattr__(self, name, point)

    @property
    def x_g(self) -> FloatArray:
        return np.asarray(self.grasp, dtype=np.float64)

    @property
    def x_f(self) -> FloatArray:
        return np.asarray(self.function, dtype=np.float64)

    @property
    def x_e(self) -> FloatArray:
        return np.asarray(self.effect, dtype=np.float64)

    @property
    def effect_direction(self) -> FloatArray:
        """e = x_e - x_f."""
        return self.x_e - self.x_f

    @classmethod
    def from_direction(
        cls, grasp: FloatArray, function: FloatArray, direction: FloatArray
    ) -> ToolKeypoints:
        """Build keypoints with x_e one unit from x_f along ``direction``."""
        d = np.asarray(direction, dtype=np.float64)
        norm = float(np.hypot(d[0], d[1]))
        if not norm > 0.0:
            raise ValueError("effect direction must be non-zero")
        f = np.asarray(function, dtype=np.float64)
        return cls(tuple(grasp), tuple(f), tuple(f + d / norm))  # type: ignore[arg-type]

    def as_vector(self) -> FloatArray:
        """Six floats x_g.x, x_g.y, x_f.x, x_f.y, x_e.x, x_e.y."""
        return np.array([*self.grasp, *self.function, *self.effect], dtype=np.float64)

    def to_list(self) -> list[float]:
        return [float(v) for v in self.as_vector()]

    @classmethod
    def from_vector(cls, values: FloatArray | list[float]) -> ToolKeypoints:
        v = [float(x) for x in values]
        if len(v) != 6:
            raise ValueError(f"expected 6 values, got {len(v)}")
        return cls((v[0], v[1]), (v[2], v[3]), (v[4], v[5]))

    def to_text(self) -> str:
        """Comma-separated text form used by the CLI and records."""
        return ",".join(repr(v) for v in self.to_list())

    @classmethod
    def parse(cls, text: str) -> ToolKeypoints:
        """Parse the comma-separated text form.

        Raises:
            ParseError: If the text is not six finite floats
        """
        fields = [f.strip() for f in text.split(",")]
        if len(fields) != 6 or any(not f for f in fields):
            raise ParseError(f"expected 6 comma-separated floats, got {text!r}")
        try:
            return cls.from_vector([float(f) for f in fields])
        except ValueError as e:
            raise ParseError(f"malformed keypoints {text!r}: {e}", cause=e) from e

    def transformed(self, rotation: FloatArray, offset: FloatArray) -> ToolKeypoints:
        """Apply p -> R p + t to all three points."""
        pts = np.vstack([self.x_g, self.x_f, self.x_e]) @ rotation.T + offset
        return ToolKeypoints(tuple(pts[0]), tuple(pts[1]), tuple(pts[2]))  # type: ignore[arg-type]
