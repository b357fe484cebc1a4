"""Heuristic keypoints from the main-part line and off-axis clusters."""

from __future__ import annotations

import numpy as np

from ...value_objects.geometry import FloatArray, PointCloud
from ...value_objects.keypoints import ToolKeypoints
from ...value_objects.task import TaskKind
from ..exceptions import DegenerateInputError
from ..geometry import STREAM_HEURISTIC, euclidean_cluster, make_rng, nearest_indices, ransac_line
from .validation import MIN_SEPARATION

MIN_CLOUD_POINTS = 32
RANSAC_ITERATIONS = 200
RANSAC_TOL = 0.008
CLUSTER_RADIUS = 0.015
CLUSTER_MIN_POINTS = 5
GRASP_FRACTION = 0.25


def _function_candidates(
    xy: FloatArray,
    clusters: list[np.ndarray],
    axis_origin: FloatArray,
    axis_normal: FloatArray,
    grasp: FloatArray,
) -> list[int]:
    """Per cluster: the point farthest from the axis and the one farthest from x_g."""
    found: list[int] = []
    for members in clusters:
        pts = xy[members]
        off_axis = np.abs((pts - axis_origin) @ axis_normal)
        from_grasp = np.hypot(*(pts - grasp).T)
        for k in (int(np.argmax(off_axis)), int(np.argmax(from_grasp))):
            index = int(members[k])
            if index not in found and from_grasp[k] >= MIN_SEPARATION:
                found.append(index)
    return found


def heuristic_keypoints(cloud: PointCloud, task: TaskKind | str, seed: int) -> ToolKeypoints:
    """Keypoints from RANSAC main part plus clustered protrusions.

    x_g sits a quarter of the way along the main segment from the end farthest
    from the largest off-axis cluster. x_f is drawn by ``seed`` from cluster
    extremities (or is the far segment end when there are none). The effect
    direction points away from the axis for hammering and pushing, and along
    the axis away from x_g for reaching.

    Raises:
        DegenerateInputError: If the cloud is too small or has no usable main part
    """
    task = TaskKind(task)
    if cloud.count < MIN_CLOUD_POINTS:
        raise DegenerateInputError(
            f"heuristic needs at least {MIN_CLOUD_POINTS} points, got {cloud.count}"
        )
    xy = cloud.xy
    segment, inliers = ransac_line(xy, RANSAC_ITERATIONS, RANSAC_TOL, seed)
    origin = np.asarray(segment.a)
    direction = segment.direction
    normal = segment.normal

    outliers = np.setdiff1d(np.arange(cloud.count), inliers)
    clusters = [outliers[c] for c in euclidean_cluster(xy[outliers], CLUSTER_RADIUS, CLUSTER_MIN_POINTS)]

    ends = np.vstack([segment.a, segment.b])
    if clusters:
        largest = xy[clusters[0]].mean(axis=0)
        far = int(np.argmax(np.hypot(*(ends - largest).T)))
    else:
        far = 0
    handle_end, tip_end = ends[far], ends[1 - far]
    grasp_raw = handle_end + GRASP_FRACTION * (tip_end - handle_end)
    grasp = xy[nearest_indices(xy, grasp_raw)[0]]

    candidates = _function_candidates(xy, clusters, origin, normal, grasp)
    if not candidates:
        tip = xy[nearest_indices(xy, tip_end)[0]]
        if np.hypot(*(tip - grasp)) < MIN_SEPARATION:
            raise DegenerateInputError("main part too short for distinct grasp and function points")
        function = tip
    else:
        rng = make_rng(seed, STREAM_HEURISTIC)
        function = xy[candidates[int(rng.integers(len(candidates)))]]

    if task is TaskKind.REACHING:
        along = float((function - grasp) @ direction)
        effect = direction if along >= 0.0 else -direction
    else:
        side = float((function - origin) @ normal)
        if side == 0.0 and clusters:
            side = float((xy[clusters[0]].mean(axis=0) - origin) @ normal)
        effect = normal if side >= 0.0 else -normal
    return ToolKeypoints.from_direction(grasp, function, effect)
