"""Geometric primitives shared by every other domain service.

All randomness flows through ``make_rng``: a Philox counter-based generator
keyed by a 64-bit seed plus stream integers. Functions here are pure and
thread-safe.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from ..value_objects.geometry import (
    FloatArray,
    PlanarPose,
    PointCloud,
    Segment2,
    rotation_matrix,
)
from .exceptions import DegenerateInputError, EmptyCloudError

SEED_MASK = (1 << 64) - 1

# Stream tags keep the substreams of one seed independent.
STREAM_SAMPLE = 1
STREAM_RANSAC = 2
STREAM_TOOLGEN = 3
STREAM_RENDER = 4
STREAM_SCENE = 5
STREAM_GRASP = 6
STREAM_HEURISTIC = 7
STREAM_PROPOSE = 8
STREAM_TRAIN = 9
STREAM_INIT = 10
STREAM_POLICY = 11
STREAM_EPISODE = 12


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """Deterministic generator for ``seed`` and an optional stream path."""
    entropy = [int(seed) & SEED_MASK, *(int(s) & SEED_MASK for s in stream)]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def derive_seed(seed: int, *stream: int) -> int:
    """A new 64-bit seed derived from ``seed`` and a stream path."""
    entropy = [int(seed) & SEED_MASK, *(int(s) & SEED_MASK for s in stream)]
    state = np.random.SeedSequence(entropy).generate_state(1, dtype=np.uint64)
    return int(state[0])


def sample_points(cloud: PointCloud, m: int, seed: int) -> PointCloud:
    """Draw ``m`` points uniformly with replacement.

    Raises:
        EmptyCloudError: If the cloud has no points
    """
    if cloud.count == 0:
        raise EmptyCloudError("cannot sample from an empty cloud")
    if m < 1:
        raise ValueError("m must be >= 1")
    rng = make_rng(seed, STREAM_SAMPLE)
    indices = rng.integers(0, cloud.count, size=m)
    return PointCloud(cloud.points[indices])


def chamfer_distance(a: PointCloud, b: PointCloud) -> float:
    """Symmetric mean of squared nearest-neighbor distances.

    Raises:
        EmptyCloudError: If either cloud is empty
    """
    if a.count == 0 or b.count == 0:
        raise EmptyCloudError("chamfer distance needs two non-empty clouds")
    return chamfer_from_trees(a.points, cKDTree(a.points), b.points, cKDTree(b.points))


def chamfer_from_trees(
    a: FloatArray, tree_a: cKDTree, b: FloatArray, tree_b: cKDTree
) -> float:
    """Chamfer distance for point arrays with prebuilt KD-trees."""
    d_ab, _ = tree_b.query(a)
    d_ba, _ = tree_a.query(b)
    return float(np.mean(np.square(d_ab))) + float(np.mean(np.square(d_ba)))


def transform_xy(
    xy: ArrayLike, pose_delta: PlanarPose, pivot: ArrayLike = (0.0, 0.0)
) -> FloatArray:
    """Rotate planar points by theta about ``pivot``, then translate.

    Written as p + (R - I)(p - pivot) + t so that the identity pose returns
    the input bit for bit.
    """
    planar = np.asarray(xy, dtype=np.float64)
    center = np.asarray(pivot, dtype=np.float64)
    delta = rotation_matrix(pose_delta.theta) - np.eye(2)
    return np.asarray(planar + (planar - center) @ delta.T + pose_delta.position)


def transform_cloud(
    cloud: PointCloud, pose_delta: PlanarPose, pivot: ArrayLike = (0.0, 0.0)
) -> PointCloud:
    """Rigid planar motion of a cloud; z is unchanged."""
    points = cloud.points.copy()
    points[:, :2] = transform_xy(cloud.xy, pose_delta, pivot)
    return PointCloud(points)


def place_cloud(cloud: PointCloud, pose: PlanarPose) -> PointCloud:
    """Map a tool-frame cloud into the world at ``pose``."""
    return transform_cloud(cloud, pose, (0.0, 0.0))


def ransac_hypotheses(n: int, iterations: int, seed: int) -> NDArray[np.intp]:
    """The (iterations, 2) index pairs ``ransac_line`` tries, in order."""
    rng = make_rng(seed, STREAM_RANSAC)
    first = rng.integers(0, n, size=iterations)
    second = rng.integers(0, n - 1, size=iterations)
    second = second + (second >= first)
    return np.stack([first, second], axis=1)


def hypothesis_inlier_counts(
    xy: FloatArray, pairs: NDArray[np.intp], inlier_tol: float
) -> tuple[NDArray[np.intp], NDArray[np.bool_]]:
    """Inlier count per hypothesis line and the full inlier mask.

    Hypotheses through two coincident points count as -1.
    """
    p = xy[pairs[:, 0]]
    q = xy[pairs[:, 1]]
    delta = q - p
    length = np.hypot(delta[:, 0], delta[:, 1])
    valid = length > 0.0
    safe = np.where(valid, length, 1.0)
    normal = np.stack([-delta[:, 1], delta[:, 0]], axis=1) / safe[:, None]
    offsets = xy[None, :, :] - p[:, None, :]
    distances = np.abs(np.einsum("hnk,hk->hn", offsets, normal))
    mask = distances <= inlier_tol
    counts = np.where(valid, mask.sum(axis=1), -1)
    return counts, mask


def ransac_line(
    points: ArrayLike, iterations: int, inlier_tol: float, seed: int
) -> tuple[Segment2, NDArray[np.intp]]:
    """Fit the main line of a planar point set.

    Each hypothesis is the line through two distinct sampled points; the one
    with the most inliers wins, ties going to the earliest iteration. The
    segment spans the extreme inlier projections.

    Returns:
        The main segment and the sorted inlier indices

    Raises:
        DegenerateInputError: If fewer than two points are given or every
            sampled pair is coincident
    """
    xy = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    n = xy.shape[0]
    if n < 2:
        raise DegenerateInputError(f"ransac needs at least 2 points, got {n}")
    if iterations < 1 or not inlier_tol > 0.0:
        raise ValueError("iterations must be >= 1 and inlier_tol > 0")

    pairs = ransac_hypotheses(n, iterations, seed)
    counts, mask = hypothesis_inlier_counts(xy, pairs, inlier_tol)
    best = int(np.argmax(counts))
    if counts[best] < 0:
        raise DegenerateInputError("all sampled point pairs coincide")

    origin = xy[pairs[best, 0]]
    direction = xy[pairs[best, 1]] - origin
    direction = direction / np.hypot(direction[0], direction[1])
    inliers = np.flatnonzero(mask[best])
    t = (xy[inliers] - origin) @ direction
    segment = Segment2(
        tuple(origin + t.min() * direction),  # type: ignore[arg-type]
        tuple(origin + t.max() * direction),  # type: ignore[arg-type]
    )
    return segment, inliers


def euclidean_cluster(
    points: ArrayLike, radius: float, min_points: int
) -> list[NDArray[np.intp]]:
    """Connected components of the radius-neighborhood graph.

    Components smaller than ``min_points`` are dropped. Clusters come back as
    sorted index arrays, largest first, ties by smallest member index.
    """
    if not radius > 0.0 or min_points < 1:
        raise ValueError("radius must be positive and min_points >= 1")
    xy = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    n = xy.shape[0]
    if n == 0:
        return []

    pairs = cKDTree(xy).query_pairs(r=radius, output_type="ndarray")
    graph = coo_matrix(
        (np.ones(len(pairs), dtype=np.int8), (pairs[:, 0], pairs[:, 1])), shape=(n, n)
    )
    _, labels = connected_components(graph, directed=False)

    order = np.argsort(labels, kind="stable")
    boundaries = np.flatnonzero(np.diff(labels[order])) + 1
    groups = [g for g in np.split(order, boundaries) if len(g) >= min_points]
    groups.sort(key=lambda g: (-len(g), int(g[0])))
    return groups


def nearest_indices(cloud_xy: FloatArray, query_xy: ArrayLike) -> NDArray[np.intp]:
    """Index of the nearest cloud point (planar) for each query point."""
    _, idx = cKDTree(cloud_xy).query(np.asarray(query_xy, dtype=np.float64).reshape(-1, 2))
    return np.asarray(idx, dtype=np.intp)
