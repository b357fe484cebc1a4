"""Antipodal top-down grasp sampling on planar tool silhouettes."""

from __future__ import annotations

import math

import numpy as np
from numpy.typing import NDArray
from scipy.spatial import cKDTree

from ...value_objects.geometry import FloatArray, PointCloud, normalize_angle
from ...value_objects.task import GRIPPER_MAX_WIDTH, GraspPose
from ..geometry import STREAM_GRASP, make_rng

BOUNDARY_RADIUS = 0.015
BOUNDARY_OFFSET_RATIO = 0.25
MIN_NEIGHBORS = 3
MAX_BOUNDARY_POINTS = 300
CONE_HALF_ANGLE = math.radians(30.0)
MIN_JAW_SEPARATION = 0.004
WIDTH_MARGIN = 0.02
NMS_RADIUS = 0.004
GRASP_CANDIDATE_COUNT = 64


def boundary_points(xy: FloatArray) -> tuple[NDArray[np.intp], FloatArray]:
    """Silhouette boundary points and their outward normals.

    A point is on the boundary when the centroid of its neighbors within
    ``BOUNDARY_RADIUS`` sits more than a quarter radius away; the outward
    normal points from that centroid to the point.
    """
    n = len(xy)
    pairs = cKDTree(xy).query_pairs(r=BOUNDARY_RADIUS, output_type="ndarray")
    sums = xy.copy()
    counts = np.ones(n)
    np.add.at(sums, pairs[:, 0], xy[pairs[:, 1]])
    np.add.at(sums, pairs[:, 1], xy[pairs[:, 0]])
    np.add.at(counts, pairs[:, 0], 1.0)
    np.add.at(counts, pairs[:, 1], 1.0)
    offset = xy - sums / counts[:, None]
    length = np.hypot(offset[:, 0], offset[:, 1])
    mask = (length > BOUNDARY_OFFSET_RATIO * BOUNDARY_RADIUS) & (counts > MIN_NEIGHBORS)
    idx = np.flatnonzero(mask)
    return idx, offset[idx] / length[idx, None]


def antipodal_pairs(
    xy: FloatArray, normals: FloatArray
) -> tuple[NDArray[np.intp], NDArray[np.intp], FloatArray, FloatArray]:
    """All boundary pairs whose normals lie inside each other's 30-degree cone.

    Returns:
        (i, j, separation, cos_misalignment) for each admissible pair
    """
    i, j = np.triu_indices(len(xy), k=1)
    delta = xy[j] - xy[i]
    separation = np.hypot(delta[:, 0], delta[:, 1])
    keep = (separation >= MIN_JAW_SEPARATION) & (separation <= GRIPPER_MAX_WIDTH)
    i, j, delta, separation = i[keep], j[keep], delta[keep], separation[keep]
    axis = delta / separation[:, None]
    cos_cone = math.cos(CONE_HALF_ANGLE)
    opposed = -np.einsum("ij,ij->i", normals[i], normals[j])
    out_i = -np.einsum("ij,ij->i", normals[i], axis)
    out_j = np.einsum("ij,ij->i", normals[j], axis)
    keep = (opposed >= cos_cone) & (out_i >= cos_cone) & (out_j >= cos_cone)
    return i[keep], j[keep], separation[keep], opposed[keep]


def sample_grasp_candidates(cloud: PointCloud, n: int, seed: int) -> list[GraspPose]:
    """Up to ``n`` antipodal grasps, best quality first.

    Quality is 0.5 (1 + cos of normal misalignment), scaled down linearly as
    the jaw separation approaches the gripper's maximum width. Candidates
    whose midpoints lie within 4 mm of a better one are suppressed. An empty
    list means no feasible grasp.
    """
    if cloud.count == 0:
        raise ValueError("cloud must be non-empty")
    if n < 1:
        raise ValueError("n must be >= 1")
    xy = cloud.xy
    idx, normals = boundary_points(xy)
    if len(idx) > MAX_BOUNDARY_POINTS:
        rng = make_rng(seed, STREAM_GRASP)
        chosen = np.sort(rng.choice(len(idx), size=MAX_BOUNDARY_POINTS, replace=False))
        idx, normals = idx[chosen], normals[chosen]
    if len(idx) < 2:
        return []

    points = xy[idx]
    i, j, separation, cos_mis = antipodal_pairs(points, normals)
    if len(i) == 0:
        return []
    margin = np.clip((GRIPPER_MAX_WIDTH - separation) / WIDTH_MARGIN, 0.0, 1.0)
    quality = np.clip(0.5 * (1.0 + cos_mis) * margin, 0.0, 1.0)
    midpoints = 0.5 * (points[i] + points[j])
    delta = points[j] - points[i]
    theta = np.arctan2(delta[:, 1], delta[:, 0]) + math.pi / 2.0

    order = np.argsort(-quality, kind="stable")
    kept: list[int] = []
    kept_mid = np.empty((0, 2))
    for k in order:
        if kept and np.min(np.hypot(*(kept_mid - midpoints[k]).T)) <= NMS_RADIUS:
            continue
        kept.append(int(k))
        kept_mid = np.vstack([kept_mid, midpoints[k]])
        if len(kept) == n:
            break
    return [
        GraspPose(
            (float(midpoints[k, 0]), float(midpoints[k, 1])),
            normalize_angle(float(theta[k])),
            float(separation[k]),
            float(quality[k]),
        )
        for k in kept
    ]


def grasp_matches(
    grasp: GraspPose, candidate: GraspPose, position_tol: float, angle_tol: float
) -> bool:
    """Whether two grasps agree in position and in jaw axis (angles mod pi)."""
    dx = grasp.position[0] - candidate.position[0]
    dy = grasp.position[1] - candidate.position[1]
    if math.hypot(dx, dy) > position_tol:
        return False
    diff = abs(math.remainder(grasp.theta - candidate.theta, math.pi))
    return diff <= angle_tol
