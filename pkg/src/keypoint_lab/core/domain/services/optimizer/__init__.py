"""Keypoints to grasp and action: QP construction, solving and pose recovery."""

from .action import default_drive, observed_pose, recover_action, rigidity_gap, select_grasp
from .active_set import solve_box_qp_exhaustive, solve_qp
from .force import compute_v, force_spec, tool_angle
from .qp_builder import ACTION_Q, FUNCTION_HALF_WIDTH, build_qp

__all__ = [
    "ACTION_Q",
    "FUNCTION_HALF_WIDTH",
    "build_qp",
    "compute_v",
    "default_drive",
    "force_spec",
    "observed_pose",
    "recover_action",
    "rigidity_gap",
    "select_grasp",
    "solve_box_qp_exhaustive",
    "solve_qp",
    "tool_angle",
]
