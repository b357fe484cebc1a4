"""Template keypoints: Chamfer nearest neighbor with rotation search and transfer."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from ...value_objects.geometry import FloatArray, PointCloud, rotation_matrix
from ...value_objects.keypoints import ToolKeypoints
from ..exceptions import DegenerateInputError, EmptyCloudError, EmptyLibraryError
from ..geometry import chamfer_from_trees
from .validation import snap_keypoints

ROTATION_STEPS = 36
MATCH_POINTS = 256


@dataclass(frozen=True)
class TemplateEntry:
    """A library cloud with the keypoints that worked for it."""

    cloud: PointCloud
    keypoints: ToolKeypoints


@dataclass(frozen=True)
class TemplateMatch:
    """Best library entry, rotation and Chamfer distance for a query."""

    index: int
    rotation: float
    distance: float


def _centered_subsample(cloud: PointCloud) -> tuple[FloatArray, FloatArray]:
    """Centroid and a deterministic evenly spaced subsample, centered in xy."""
    if cloud.count == 0:
        raise EmptyCloudError("template matching needs non-empty clouds")
    centroid = cloud.centroid_xy()
    count = min(cloud.count, MATCH_POINTS)
    idx = np.linspace(0, cloud.count - 1, count).astype(np.intp)
    points = cloud.points[idx].copy()
    points[:, :2] -= centroid
    return centroid, points


def _rotated(points: FloatArray, theta: float) -> FloatArray:
    out = points.copy()
    out[:, :2] = points[:, :2] @ rotation_matrix(theta).T
    return out


def match_template(cloud: PointCloud, library: Sequence[TemplateEntry]) -> TemplateMatch:
    """Find the library entry and rotation closest to ``cloud`` in Chamfer distance.

    Each library cloud is rotated about its centroid in 10-degree steps.
    Only strictly better distances replace the incumbent, so ties resolve to
    library order and then to the smaller rotation.

    Raises:
        EmptyLibraryError: If the library is empty
    """
    if not library:
        raise EmptyLibraryError("template library is empty")
    _, query = _centered_subsample(cloud)
    query_tree = cKDTree(query)
    best = TemplateMatch(-1, 0.0, math.inf)
    for index, entry in enumerate(library):
        _, reference = _centered_subsample(entry.cloud)
        for step in range(ROTATION_STEPS):
            theta = 2.0 * math.pi * step / ROTATION_STEPS
            rotated = reference if step == 0 else _rotated(reference, theta)
            distance = chamfer_from_trees(rotated, cKDTree(rotated), query, query_tree)
            if distance < best.distance:
                best = TemplateMatch(index, theta, distance)
    return best


def transfer_keypoints(
    cloud: PointCloud, entry: TemplateEntry, rotation: float
) -> ToolKeypoints | None:
    """Carry an entry's keypoints onto ``cloud`` and snap them to it.

    Returns ``None`` if the transferred effect direction degenerates.
    """
    rot = rotation_matrix(rotation)
    source_center = entry.cloud.centroid_xy()
    target_center = cloud.centroid_xy()
    k = entry.keypoints
    grasp = (k.x_g - source_center) @ rot.T + target_center
    function = (k.x_f - source_center) @ rot.T + target_center
    return snap_keypoints(cloud.xy, grasp, function, k.effect_direction @ rot.T)


def template_keypoints(cloud: PointCloud, library: Sequence[TemplateEntry]) -> ToolKeypoints:
    """Keypoints transferred from the closest library entry.

    Raises:
        EmptyLibraryError: If the library is empty
        DegenerateInputError: If the transferred effect direction is degenerate
    """
    match = match_template(cloud, library)
    result = transfer_keypoints(cloud, library[match.index], match.rotation)
    if result is None:
        raise DegenerateInputError("transferred keypoints are degenerate")
    return result
