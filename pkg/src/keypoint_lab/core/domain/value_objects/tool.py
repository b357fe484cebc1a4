"""Tool value objects: convex parts and procedurally generated tools."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any

from .geometry import PlanarPose

MIN_PART_SIZE = 0.005
MAX_PART_SIZE = 0.30


class PartShape(str, Enum):
    """Footprint primitive of a tool part."""

    BOX = "box"
    CAPSULE = "capsule"
    DISK = "disk"


class ToolCategory(str, Enum):
    """Tool family used for train/test splits."""

    HAMMER = "hammer"
    NON_HAMMER = "non-hammer"


@dataclass(frozen=True)
class ToolPart:
    """Convex part of a tool, posed in the tool frame.

    ``length`` is the extent along the part's local x axis and ``width`` the
    extent across it. Capsules include their rounded caps in ``length``; disks
    use ``length`` as diameter and require ``width == length``. ``height`` is
    the top-surface height above the table.
    """

    shape: PartShape
    length: float
    width: float
    height: float
    pose: PlanarPose

    def __post_init__(self) -> None:
        """Validate part sizes."""
        object.__setattr__(self, "shape", PartShape(self.shape))
        for name in ("length", "width", "height"):
            value = float(getattr(self, name))
            if not MIN_PART_SIZE <= value <= MAX_PART_SIZE:
                raise ValueError(
                    f"{name} must be in [{MIN_PART_SIZE}, {MAX_PART_SIZE}], got {value}"
                )
            object.__setattr__(self, name, value)
        if self.shape is PartShape.CAPSULE and self.width > self.length:
            raise ValueError("capsule width cannot exceed its length")
        if self.shape is PartShape.DISK and not math.isclose(
            self.width, self.length, rel_tol=0.0, abs_tol=1e-12
        ):
            raise ValueError("disk width must equal its diameter")

    @property
    def thickness(self) -> float:
        """Extent perpendicular to the long axis."""
        return self.width

    @property
    def area(self) -> float:
        """Footprint area in square meters."""
        if self.shape is PartShape.BOX:
            return self.length * self.width
        if self.shape is PartShape.CAPSULE:
            radius = self.width / 2.0
            return (self.length - self.width) * self.width + math.pi * radius**2
        return math.pi * (self.length / 2.0) ** 2

    def with_pose(self, pose: PlanarPose) -> ToolPart:
        """Copy of this part at another pose."""
        return ToolPart(self.shape, self.length, self.width, self.height, pose)

    def to_dict(self) -> dict[str, Any]:
        """Serialize to dictionary."""
        return {
            "shape": self.shape.value,
            "length": self.length,
            "width": self.width,
            "height": self.height,
            "pose": self.pose.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ToolPart:
        """Create part from dictionary data."""
        return cls(
            shape=PartShape(data["shape"]),
            length=data["length"],
            width=data["width"],
            height=data["height"],
            pose=PlanarPose.from_dict(data["pose"]),
        )


@dataclass(frozen=True)
class ToolSpec:
    """A tool as a union of 1-4 convex parts.

    Hammers have exactly two parts, the handle first and the head second.
    """

    id: str
    category: ToolCategory
    parts: tuple[ToolPart, ...]
    seed: int

    def __post_init__(self) -> None:
        """Validate part count and category constraints."""
        if not self.id or not self.id.strip():
            raise ValueError("id cannot be empty")
        object.__setattr__(self, "category", ToolCategory(self.category))
        object.__setattr__(self, "parts", tuple(self.parts))
        if not 1 <= len(self.parts) <= 4:
            raise ValueError(f"a tool has 1-4 parts, got {len(self.parts)}")
        if self.category is ToolCategory.HAMMER:
            if len(self.parts) != 2:
                raise ValueError("a hammer has exactly two parts")
            handle, head = self.parts
            if handle.length < 2.0 * head.length:
                raise ValueError("hammer handle must be at least twice the head length")

    @property
    def total_area(self) -> float:
        """Sum of part areas (overlaps counted twice)."""
        return sum(part.area for part in self.parts)

    def equals(self, other: object) -> bool:
        """Value-based equality comparison."""
        if not isinstance(other, ToolSpec):
            return False
        return self.to_dict() == other.to_dict()

    def to_dict(self) -> dict[str, Any]:
        """Serialize to dictionary (one line of the tool catalog)."""
        return {
            "id": self.id,
            "category": self.category.value,
            "seed": self.seed,
            "parts": [part.to_dict() for part in self.parts],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ToolSpec:
        """Create tool from dictionary data."""
        return cls(
            id=data["id"],
            category=ToolCategory(data["category"]),
            parts=tuple(ToolPart.from_dict(p) for p in data["parts"]),
            seed=int(data["seed"]),
        )
