"""Quasi-static execution of a grasp and manipulation action.

The tool is placed rigidly at a stand-off pose behind its final pose and
swept along the force direction. Walls are hard obstacles; target disks move
along the force by the sweep length left after first contact. In hammering
the nail seats after the required depth and the sweep ends there, so a
striking part wider than the slot collides with its walls.
"""

from __future__ import annotations

import math

import numpy as np

from ...value_objects.geometry import FloatArray, PointCloud, rotation_matrix
from ...value_objects.task import (
    EpisodeOutcome,
    GraspPose,
    ManipAction,
    TargetDisk,
    TaskKind,
    TaskScene,
)
from ..exceptions import InvalidActionError
from .grasps import GRASP_CANDIDATE_COUNT, grasp_matches, sample_grasp_candidates
from .scenes import TUNNEL_GAP

STANDOFF = 0.05
SWEEP_STEPS = 200
GRASP_POSITION_TOL = 0.005
GRASP_ANGLE_TOL = math.radians(10.0)
THIN_PART_MARGIN = 0.005


def place_for_action(tool_xy: FloatArray, action: ManipAction) -> FloatArray:
    """Tool points after the rigid move taking the reference onto (x_T, theta_T)."""
    ref = action.reference
    rotation = rotation_matrix(action.theta - ref.theta)
    return np.asarray((tool_xy - ref.position) @ rotation.T + np.asarray(action.position))


def contact_distance(start_xy: FloatArray, direction: FloatArray, disk: TargetDisk) -> float:
    """Sweep length at which the first tool point touches the disk (inf if never)."""
    rel = start_xy - np.asarray(disk.center)
    b = rel @ direction
    c = np.einsum("ij,ij->i", rel, rel) - disk.radius**2
    disc = b * b - c
    hit = disc >= 0.0
    if not np.any(hit):
        return math.inf
    root = np.sqrt(np.where(hit, disc, 0.0))
    entry = -b - root
    exit_ = -b + root
    # Points already overlapping the disk touch it at zero sweep.
    s = np.where(entry >= 0.0, entry, np.where(exit_ >= 0.0, 0.0, math.inf))
    s = np.where(hit, s, math.inf)
    return float(np.min(s))


def _first_collision(start_xy: FloatArray, direction: FloatArray, total: float, scene: TaskScene) -> int | None:
    if not scene.walls:
        return None
    offsets = np.linspace(0.0, total, SWEEP_STEPS + 1)
    for step, s in enumerate(offsets):
        moved = start_xy + s * direction
        if any(np.any(wall.contains_strict(moved)) for wall in scene.walls):
            return step
    return None


def _thin_part_extent(final_xy: FloatArray, direction: FloatArray, scene: TaskScene) -> float:
    """Lateral extent of the tool points inside the corridor at the final pose."""
    if scene.corridor is None:
        return 0.0
    inside = final_xy[scene.corridor.contains(final_xy)]
    if len(inside) == 0:
        return 0.0
    lateral = inside @ np.array([-direction[1], direction[0]])
    return float(lateral.max() - lateral.min())


def execute(
    scene: TaskScene, tool_cloud: PointCloud, grasp: GraspPose, action: ManipAction
) -> EpisodeOutcome:
    """Run one episode and report whether the task succeeded.

    Raises:
        InvalidActionError: If the grasp or action contain non-finite values
    """
    values = [*grasp.position, grasp.theta, *action.position, action.theta, action.drive]
    values += [action.reference.x, action.reference.y, action.reference.theta]
    if not all(math.isfinite(v) for v in values):
        raise InvalidActionError("grasp and action must be finite")

    candidates = sample_grasp_candidates(tool_cloud, GRASP_CANDIDATE_COUNT, scene.seed)
    if not any(
        grasp_matches(grasp, c, GRASP_POSITION_TOL, GRASP_ANGLE_TOL) for c in candidates
    ):
        return EpisodeOutcome(False, False, False, 0.0, "grasp-rejected")

    direction = scene.env_keypoints.direction
    final_xy = place_for_action(tool_cloud.xy, action)
    start_xy = final_xy - STANDOFF * direction
    total = STANDOFF + action.drive
    contacts = [contact_distance(start_xy, direction, disk) for disk in scene.targets]

    sweep = total
    if scene.kind is TaskKind.HAMMERING and math.isfinite(contacts[0]):
        # A nail driven the full depth is seated and stops the tool.
        sweep = min(total, contacts[0] + scene.required_displacement)

    step = _first_collision(start_xy, direction, sweep, scene)
    if step is not None:
        return EpisodeOutcome(False, True, True, 0.0, f"collision at step {step}")

    displacements = [max(0.0, total - s) if math.isfinite(s) else 0.0 for s in contacts]
    if scene.kind is TaskKind.HAMMERING:
        displacements = [min(d, scene.required_displacement) for d in displacements]
    achieved = min(displacements)

    notes = [f"displacement={achieved:.6f}"]
    success = achieved >= scene.required_displacement
    if scene.kind is TaskKind.REACHING:
        extent = _thin_part_extent(start_xy + sweep * direction, direction, scene)
        if extent >= TUNNEL_GAP - THIN_PART_MARGIN:
            notes.append(f"thin-part violation extent={extent:.6f}")
            success = False
    return EpisodeOutcome(success, True, False, achieved, " ".join(notes))
