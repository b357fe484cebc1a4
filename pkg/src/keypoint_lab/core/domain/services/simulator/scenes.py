"""Task scene construction for hammering, pushing and reaching.

Every scene pushes along +y from an anchor jittered around the origin; the
tool starts in a staging area below the task region.
"""

from __future__ import annotations

import math

from ...value_objects.geometry import PlanarPose
from ...value_objects.task import Box2, EnvKeypoints, TargetDisk, TaskKind, TaskScene
from ..geometry import STREAM_SCENE, make_rng

ANCHOR_JITTER = 0.02
RECEIVER_OFFSET = 0.1
WORKSPACE = Box2(-0.5, -0.7, 0.5, 0.5)
STAGING_X = (-0.15, 0.15)
STAGING_Y = (-0.55, -0.40)

NAIL_RADIUS = 0.01
SLOT_GAP = 0.025
SLOT_WALL_THICKNESS = 0.02
SLOT_DEPTH = 0.12
D_NAIL = 0.03

PUSH_RADIUS = 0.02
PUSH_SPACING = 0.05
PUSH_COUNT = 3
D_PUSH = 0.05

TUNNEL_GAP = 0.04
TUNNEL_DEPTH = 0.12
TUNNEL_WALL_THICKNESS = 0.02
REACH_RADIUS = 0.012
REACH_TARGET_DEPTH = 0.10
D_REACH = 0.03

REQUIRED_DISPLACEMENT = {
    TaskKind.HAMMERING: D_NAIL,
    TaskKind.PUSHING: D_PUSH,
    TaskKind.REACHING: D_REACH,
}


def _env_below(center: tuple[float, float], radius: float) -> EnvKeypoints:
    target = (center[0], center[1] - radius)
    return EnvKeypoints(target, (target[0], target[1] + RECEIVER_OFFSET))


def _hammering(ax: float, ay: float) -> dict[str, object]:
    nail = TargetDisk((ax, ay), NAIL_RADIUS)
    half = SLOT_GAP / 2.0
    # The nail sits half-way inside the slot: the mouth is level with its center.
    y0, y1 = ay, ay + SLOT_DEPTH
    walls = (
        Box2(ax - half - SLOT_WALL_THICKNESS, y0, ax - half, y1),
        Box2(ax + half, y0, ax + half + SLOT_WALL_THICKNESS, y1),
    )
    return {"targets": (nail,), "walls": walls, "env": _env_below(nail.center, NAIL_RADIUS)}


def _pushing(ax: float, ay: float) -> dict[str, object]:
    offsets = [(k - (PUSH_COUNT - 1) / 2.0) * PUSH_SPACING for k in range(PUSH_COUNT)]
    disks = tuple(TargetDisk((ax + dx, ay), PUSH_RADIUS) for dx in offsets)
    middle = disks[PUSH_COUNT // 2]
    return {"targets": disks, "walls": (), "env": _env_below(middle.center, PUSH_RADIUS)}


def _reaching(ax: float, ay: float) -> dict[str, object]:
    half = TUNNEL_GAP / 2.0
    y0, y1 = ay, ay + TUNNEL_DEPTH
    walls = (
        Box2(ax - half - TUNNEL_WALL_THICKNESS, y0, ax - half, y1),
        Box2(ax + half, y0, ax + half + TUNNEL_WALL_THICKNESS, y1),
    )
    target = TargetDisk((ax, ay + REACH_TARGET_DEPTH), REACH_RADIUS)
    return {
        "targets": (target,),
        "walls": walls,
        "env": _env_below(target.center, REACH_RADIUS),
        "corridor": Box2(ax - half, y0, ax + half, y1),
    }


_BUILDERS = {
    TaskKind.HAMMERING: _hammering,
    TaskKind.PUSHING: _pushing,
    TaskKind.REACHING: _reaching,
}


def make_task(kind: TaskKind | str, seed: int) -> TaskScene:
    """Build a task scene, deterministic in ``seed``."""
    kind = TaskKind(kind)
    rng = make_rng(seed, STREAM_SCENE)
    ax, ay = rng.uniform(-ANCHOR_JITTER, ANCHOR_JITTER, size=2)
    layout = _BUILDERS[kind](float(ax), float(ay))
    tool_pose = PlanarPose(
        rng.uniform(*STAGING_X), rng.uniform(*STAGING_Y), rng.uniform(-math.pi, math.pi)
    )
    return TaskScene(
        kind=kind,
        env_keypoints=layout["env"],  # type: ignore[arg-type]
        walls=layout["walls"],  # type: ignore[arg-type]
        targets=layout["targets"],  # type: ignore[arg-type]
        required_displacement=REQUIRED_DISPLACEMENT[kind],
        tool_pose=tool_pose,
        workspace=WORKSPACE,
        seed=seed,
        corridor=layout.get("corridor"),  # type: ignore[arg-type]
    )
