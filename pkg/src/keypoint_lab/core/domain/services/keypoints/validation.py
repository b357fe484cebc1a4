"""Keypoint invariant gate."""

from __future__ import annotations

import math

import numpy as np
from scipy.spatial import cKDTree

from ...value_objects.geometry import FloatArray, PointCloud
from ...value_objects.keypoints import ToolKeypoints
from ..geometry import nearest_indices

SNAP_RADIUS = 0.01
MIN_SEPARATION = 0.02
UNIT_TOL = 1e-6


def validate_keypoints(k: ToolKeypoints, cloud: PointCloud) -> bool:
    """True iff x_g and x_f lie on the cloud, e is a unit vector and x_f is clear of x_g."""
    if cloud.count == 0:
        return False
    distances, _ = cKDTree(cloud.xy).query(np.vstack([k.x_g, k.x_f]))
    if np.any(distances > SNAP_RADIUS):
        return False
    if abs(float(np.linalg.norm(k.effect_direction)) - 1.0) > UNIT_TOL:
        return False
    return float(np.linalg.norm(k.x_f - k.x_g)) >= MIN_SEPARATION


def snap_keypoints(
    cloud_xy: FloatArray, grasp: FloatArray, function: FloatArray, direction: FloatArray
) -> ToolKeypoints | None:
    """Snap x_g and x_f to their nearest cloud points and re-unit the effect.

    Returns ``None`` when the direction is zero or not finite.
    """
    d = np.asarray(direction, dtype=np.float64)
    norm = math.hypot(d[0], d[1])
    if not (math.isfinite(norm) and norm > 0.0):
        return None
    idx = nearest_indices(cloud_xy, np.vstack([grasp, function]))
    return ToolKeypoints.from_direction(cloud_xy[idx[0]], cloud_xy[idx[1]], d)
