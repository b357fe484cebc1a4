"""Self-supervision episode records and loop configuration."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any

from .geometry import PlanarPose
from .keypoints import ToolKeypoints
from .task import GraspPose, ManipAction, TaskKind
from .tool import ToolCategory


class PolicyKind(str, Enum):
    """Keypoint policy used to run an episode."""

    HEURISTIC = "heuristic"
    LEARNED = "learned"
    MIXED = "mixed"
    TEMPLATE = "template"


@dataclass(frozen=True)
class EpisodeRecord:
    """One labeled (cloud, keypoints, grasp, action, success) tuple.

    ``cloud_ordinal`` indexes the observed world-frame cloud in the dataset's
    binary sidecar. Episodes that failed before a grasp or action existed
    store ``None`` for those fields.
    """

    episode_id: int
    task: TaskKind
    tool_id: str
    seed: int
    scene_seed: int
    cloud_ordinal: int
    keypoints: ToolKeypoints | None
    grasp: GraspPose | None
    action: ManipAction | None
    success: bool
    policy: PolicyKind
    diagnostics: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "task", TaskKind(self.task))
        object.__setattr__(self, "policy", PolicyKind(self.policy))
        if self.episode_id < 0 or self.cloud_ordinal < 0:
            raise ValueError("episode_id and cloud_ordinal must be non-negative")
        if self.success and (self.grasp is None or self.action is None):
            raise ValueError("a successful record needs a grasp and an action")

    def with_ordinal(self, ordinal: int) -> EpisodeRecord:
        """Copy pointing at another cloud ordinal."""
        data = self.to_dict()
        data["cloud_ordinal"] = ordinal
        return EpisodeRecord.from_dict(data)

    def to_dict(self) -> dict[str, Any]:
        """Serialize to one line of records.jsonl."""
        return {
            "episode_id": self.episode_id,
            "task": self.task.value,
            "tool_id": self.tool_id,
            "seed": self.seed,
            "scene_seed": self.scene_seed,
            "cloud_ordinal": self.cloud_ordinal,
            "success": 1 if self.success else 0,
            "policy": self.policy.value,
            "keypoints": None if self.keypoints is None else self.keypoints.to_list(),
            "grasp": None if self.grasp is None else self.grasp.to_list(),
            "grasp_width": None if self.grasp is None else self.grasp.width,
            "grasp_quality": None if self.grasp is None else self.grasp.quality,
            "action": None if self.action is None else self.action.to_list(),
            "action_reference": (
                None
                if self.action is None
                else [self.action.reference.x, self.action.reference.y, self.action.reference.theta]
            ),
            "diagnostics": self.diagnostics,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> EpisodeRecord:
        """Create record from dictionary data."""
        grasp = None
        if data.get("grasp") is not None:
            gx, gy, gt = data["grasp"]
            grasp = GraspPose((gx, gy), gt, data["grasp_width"], data["grasp_quality"])
        action = None
        if data.get("action") is not None:
            ax, ay, at, drive = data["action"]
            rx, ry, rt = data["action_reference"]
            action = ManipAction((ax, ay), at, drive, PlanarPose(rx, ry, rt))
        keypoints = None
        if data.get("keypoints") is not None:
            keypoints = ToolKeypoints.from_vector(data["keypoints"])
        return cls(
            episode_id=int(data["episode_id"]),
            task=TaskKind(data["task"]),
            tool_id=data["tool_id"],
            seed=int(data["seed"]),
            scene_seed=int(data["scene_seed"]),
            cloud_ordinal=int(data["cloud_ordinal"]),
            keypoints=keypoints,
            grasp=grasp,
            action=action,
            success=bool(data["success"]),
            policy=PolicyKind(data["policy"]),
            diagnostics=data.get("diagnostics", ""),
        )


@dataclass(frozen=True)
class LoopConfig:
    """Self-supervision schedule for one task."""

    task: TaskKind
    episodes_per_round: int = 1000
    p_heuristic: tuple[float, ...] = (1.0, 0.3, 0.0)
    categories: tuple[ToolCategory, ...] = (ToolCategory.HAMMER, ToolCategory.NON_HAMMER)
    seed: int = 0
    proposal_count: int = 64
    threads: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "task", TaskKind(self.task))
        object.__setattr__(self, "p_heuristic", tuple(float(p) for p in self.p_heuristic))
        object.__setattr__(self, "categories", tuple(ToolCategory(c) for c in self.categories))
        if self.episodes_per_round < 1:
            raise ValueError("episodes_per_round must be >= 1")
        if not self.p_heuristic:
            raise ValueError("at least one round is required")
        if any(not 0.0 <= p <= 1.0 for p in self.p_heuristic):
            raise ValueError("p_heuristic values must be in [0, 1]")
        if any(b > a for a, b in zip(self.p_heuristic, self.p_heuristic[1:], strict=False)):
            raise ValueError("p_heuristic must be non-increasing across rounds")
        if self.p_heuristic[0] != 1.0:
            raise ValueError("round 0 bootstraps with p_heuristic = 1")
        if not self.categories:
            raise ValueError("at least one tool category is required")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")

    @property
    def rounds(self) -> int:
        return len(self.p_heuristic)
