"""Turning a QP solution into a grasp and a manipulation action."""

from __future__ import annotations

import math
from collections.abc import Sequence
from typing import Literal

import numpy as np
import structlog

from ...value_objects.geometry import PlanarPose
from ...value_objects.keypoints import ToolKeypoints
from ...value_objects.qp import QPSolution
from ...value_objects.task import MAX_DRIVE, GraspPose, ManipAction, TaskScene
from ..exceptions import DegenerateOrientationError, NoGraspError

MIN_ORIENTATION_NORM = 1e-6
DRIVE_MARGIN = 0.02

AnchorMode = Literal["function", "grasp"]

logger = structlog.get_logger(__name__)


def observed_pose(k: ToolKeypoints) -> PlanarPose:
    """Pose at x_g heading along x_f - x_g, in the frame the keypoints live in."""
    d = k.x_f - k.x_g
    return PlanarPose(float(k.x_g[0]), float(k.x_g[1]), math.atan2(d[1], d[0]))


def rigidity_gap(sol: QPSolution, k: ToolKeypoints) -> float:
    """| |x_f - x_g| observed - |x_f* - x_g*| |: how far the QP stretched the tool."""
    observed = float(np.linalg.norm(k.x_f - k.x_g))
    solved = float(np.linalg.norm(sol.function - sol.grasp))
    return abs(observed - solved)


def default_drive(scene: TaskScene) -> float:
    """Required displacement plus a small margin, capped at the maximum drive."""
    return min(scene.required_displacement + DRIVE_MARGIN, MAX_DRIVE)


def recover_action(
    sol: QPSolution,
    k: ToolKeypoints,
    drive: float,
    anchor: AnchorMode = "function",
) -> ManipAction:
    """Final tool pose from the optimal keypoint positions.

    theta_T is the heading of x_f* - x_g*. With ``anchor="function"`` the
    rigid tool is placed so its function point lands on x_f* and x_T is the
    resulting grasp-point position; with ``anchor="grasp"`` x_T = x_g*.

    Raises:
        DegenerateOrientationError: If x_f* and x_g* coincide
    """
    d = sol.function - sol.grasp
    if float(np.hypot(d[0], d[1])) < MIN_ORIENTATION_NORM:
        raise DegenerateOrientationError("optimal grasp and function points coincide")
    theta = math.atan2(d[1], d[0])
    reference = observed_pose(k)
    if anchor == "function":
        length = float(np.linalg.norm(k.x_f - k.x_g))
        position = sol.function - length * np.array([math.cos(theta), math.sin(theta)])
    elif anchor == "grasp":
        position = sol.grasp
    else:
        raise ValueError(f"unknown anchor mode: {anchor}")
    logger.debug(
        "Recovered action",
        anchor=anchor,
        theta=theta,
        rigidity_gap=rigidity_gap(sol, k),
    )
    return ManipAction(
        position=(float(position[0]), float(position[1])),
        theta=theta,
        drive=drive,
        reference=reference,
    )


def select_grasp(candidates: Sequence[GraspPose], k: ToolKeypoints) -> GraspPose:
    """Candidate closest to x_g; ties go to higher quality, then list order.

    Raises:
        NoGraspError: If there are no candidates
    """
    if not candidates:
        raise NoGraspError("no grasp candidates")
    gx, gy = k.grasp
    best = min(
        range(len(candidates)),
        key=lambda i: (
            math.hypot(candidates[i].position[0] - gx, candidates[i].position[1] - gy),
            -candidates[i].quality,
            i,
        ),
    )
    return candidates[best]
