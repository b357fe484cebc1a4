"""Planar quasi-static task simulator."""

from .execution import STANDOFF, SWEEP_STEPS, contact_distance, execute, place_for_action
from .grasps import GRASP_CANDIDATE_COUNT, boundary_points, sample_grasp_candidates
from .scenes import REQUIRED_DISPLACEMENT, make_task

__all__ = [
    "GRASP_CANDIDATE_COUNT",
    "REQUIRED_DISPLACEMENT",
    "STANDOFF",
    "SWEEP_STEPS",
    "boundary_points",
    "contact_distance",
    "execute",
    "make_task",
    "place_for_action",
    "sample_grasp_candidates",
]
