"""Procedural tool generation and top-surface cloud rendering.

Tools are unions of box, capsule and disk footprints. Membership uses 2D
signed distance functions, so every containment test is analytic.
"""

from __future__ import annotations

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..value_objects.geometry import FloatArray, PlanarPose, PointCloud, rotation_matrix
from ..value_objects.tool import PartShape, ToolCategory, ToolPart, ToolSpec
from .exceptions import GenerationFailedError
from .geometry import STREAM_RENDER, STREAM_TOOLGEN, make_rng

MAX_REJECTIONS = 1000
MIN_BOUNDING_RADIUS = 0.08
MAX_BOUNDING_RADIUS = 0.25
MIN_OVERLAP_AREA = 1e-6
OVERLAP_GRID_STEP = 1e-3
MIN_RENDER_POINTS = 64

HANDLE_LENGTH = (0.18, 0.28)
HANDLE_WIDTH = (0.012, 0.016)
# Heads are narrower than the hammering slot and protrude past the handle by
# more than the depth a seated nail lets them enter.
HEAD_LENGTH_MIN = 0.08
HEAD_LENGTH_MAX = 0.11
HEAD_WIDTH = (0.008, 0.012)
PART_HEIGHT = (0.01, 0.03)
BAR_LENGTH = (0.04, 0.26)
BAR_WIDTH = (0.01, 0.06)
DISK_DIAMETER = (0.03, 0.10)


def _to_local(part: ToolPart, xy: FloatArray) -> FloatArray:
    offset = np.asarray(xy, dtype=np.float64) - part.pose.position
    return np.asarray(offset @ rotation_matrix(part.pose.theta))


def part_sdf(part: ToolPart, xy: ArrayLike) -> FloatArray:
    """Signed distance from planar points to the part footprint (negative inside)."""
    local = _to_local(part, np.asarray(xy, dtype=np.float64))
    if part.shape is PartShape.BOX:
        q = np.abs(local) - np.array([part.length / 2.0, part.width / 2.0])
        outside = np.hypot(np.maximum(q[..., 0], 0.0), np.maximum(q[..., 1], 0.0))
        inside = np.minimum(np.maximum(q[..., 0], q[..., 1]), 0.0)
        return np.asarray(outside + inside)
    if part.shape is PartShape.CAPSULE:
        half = (part.length - part.width) / 2.0
        dx = local[..., 0] - np.clip(local[..., 0], -half, half)
        return np.asarray(np.hypot(dx, local[..., 1]) - part.width / 2.0)
    return np.asarray(np.hypot(local[..., 0], local[..., 1]) - part.length / 2.0)


def part_contains(part: ToolPart, xy: ArrayLike) -> NDArray[np.bool_]:
    """Mask of planar points inside or on the part footprint."""
    return np.asarray(part_sdf(part, xy) <= 1e-12)


def union_contains(parts: tuple[ToolPart, ...] | list[ToolPart], xy: ArrayLike) -> NDArray[np.bool_]:
    """Mask of planar points inside any part."""
    planar = np.asarray(xy, dtype=np.float64)
    mask = np.zeros(planar.shape[:-1], dtype=bool)
    for part in parts:
        mask |= part_contains(part, planar)
    return mask


def part_reach(part: ToolPart, origin: ArrayLike = (0.0, 0.0)) -> float:
    """Largest distance from ``origin`` to any footprint point."""
    o = np.asarray(origin, dtype=np.float64)
    if part.shape is PartShape.DISK:
        return float(np.hypot(*(part.pose.position - o)) + part.length / 2.0)
    if part.shape is PartShape.CAPSULE:
        half = (part.length - part.width) / 2.0
        ends = part.pose.apply(np.array([[-half, 0.0], [half, 0.0]]))
        return float(np.max(np.hypot(*(ends - o).T)) + part.width / 2.0)
    hl, hw = part.length / 2.0, part.width / 2.0
    corners = part.pose.apply(np.array([[-hl, -hw], [-hl, hw], [hl, -hw], [hl, hw]]))
    return float(np.max(np.hypot(*(corners - o).T)))


def bounding_radius(spec: ToolSpec) -> float:
    """Radius of the smallest origin-centered circle containing the tool."""
    return max(part_reach(part) for part in spec.parts)


def _sample_in_part(part: ToolPart, n: int, rng: np.random.Generator) -> FloatArray:
    """Uniform samples from one footprint, in the tool frame."""
    if part.shape is PartShape.DISK:
        radius = part.length / 2.0 * np.sqrt(rng.random(n))
        angle = 2.0 * math.pi * rng.random(n)
        local = np.stack([radius * np.cos(angle), radius * np.sin(angle)], axis=1)
    elif part.shape is PartShape.BOX:
        u = rng.random((n, 2)) - 0.5
        local = u * np.array([part.length, part.width])
    else:
        half = (part.length - part.width) / 2.0
        r = part.width / 2.0
        rect_area = 2.0 * half * part.width
        in_rect = rng.random(n) * (rect_area + math.pi * r**2) < rect_area
        u = rng.random((n, 2)) - 0.5
        rect = u * np.array([2.0 * half, part.width])
        radius = r * np.sqrt(rng.random(n))
        angle = 2.0 * math.pi * rng.random(n)
        cap = np.stack([radius * np.cos(angle), radius * np.sin(angle)], axis=1)
        cap[:, 0] += np.where(cap[:, 0] < 0.0, -half, half)
        local = np.where(in_rect[:, None], rect, cap)
    return part.pose.apply(local)


def sample_union(
    parts: tuple[ToolPart, ...] | list[ToolPart], m: int, rng: np.random.Generator
) -> FloatArray:
    """Exactly ``m`` points uniform by area over the union of footprints.

    A point drawn from part k is kept only when k is the lowest-indexed part
    containing it, so overlaps are not over-sampled.
    """
    areas = np.array([p.area for p in parts])
    weights = areas / areas.sum()
    collected: list[FloatArray] = []
    total = 0
    for _ in range(1000):
        batch = max(2 * (m - total), 64)
        owner = rng.choice(len(parts), size=batch, p=weights)
        candidates = np.empty((batch, 2))
        for k, part in enumerate(parts):
            idx = np.flatnonzero(owner == k)
            if len(idx):
                candidates[idx] = _sample_in_part(part, len(idx), rng)
        first_owner = np.full(batch, len(parts))
        for k in reversed(range(len(parts))):
            first_owner[part_contains(parts[k], candidates)] = k
        keep = candidates[first_owner == owner]
        collected.append(keep)
        total += len(keep)
        if total >= m:
            return np.vstack(collected)[:m]
    raise GenerationFailedError("union sampling did not converge")


def surface_height(parts: tuple[ToolPart, ...] | list[ToolPart], xy: FloatArray) -> FloatArray:
    """Top-surface height: the tallest part covering each point."""
    z = np.zeros(len(xy))
    for part in parts:
        z = np.where(part_contains(part, xy), np.maximum(z, part.height), z)
    return z


def overlap_area(new: ToolPart, prior: list[ToolPart]) -> float:
    """Grid estimate of the area shared by ``new`` and the union of ``prior``."""
    step = OVERLAP_GRID_STEP
    xs = np.arange(-new.length / 2.0 + step / 2.0, new.length / 2.0, step)
    ys = np.arange(-new.width / 2.0 + step / 2.0, new.width / 2.0, step)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    world = new.pose.apply(np.stack([gx.ravel(), gy.ravel()], axis=1))
    inside = part_contains(new, world) & union_contains(prior, world)
    return float(inside.sum()) * step * step


def _recentered(parts: list[ToolPart], rng: np.random.Generator) -> list[ToolPart]:
    """Shift parts so the footprint centroid sits at the tool-frame origin."""
    centroid = sample_union(parts, 2048, rng).mean(axis=0)
    return [
        p.with_pose(PlanarPose(p.pose.x - centroid[0], p.pose.y - centroid[1], p.pose.theta))
        for p in parts
    ]


def _hammer_parts(rng: np.random.Generator) -> list[ToolPart]:
    handle_length = rng.uniform(*HANDLE_LENGTH)
    handle_width = rng.uniform(*HANDLE_WIDTH)
    head_length = rng.uniform(HEAD_LENGTH_MIN, min(HEAD_LENGTH_MAX, handle_length / 2.0))
    head_width = rng.uniform(*HEAD_WIDTH)
    handle = ToolPart(
        PartShape.BOX, handle_length, handle_width, rng.uniform(*PART_HEIGHT),
        PlanarPose.identity(),
    )
    head = ToolPart(
        PartShape.BOX, head_length, head_width, rng.uniform(*PART_HEIGHT),
        PlanarPose(handle_length / 2.0 - head_width / 2.0, 0.0, math.pi / 2.0),
    )
    return [handle, head]


def _random_part(rng: np.random.Generator, pose: PlanarPose) -> ToolPart:
    shape = PartShape(rng.choice([s.value for s in PartShape]))
    height = rng.uniform(*PART_HEIGHT)
    if shape is PartShape.DISK:
        diameter = rng.uniform(*DISK_DIAMETER)
        return ToolPart(shape, diameter, diameter, height, pose)
    length = rng.uniform(*BAR_LENGTH)
    width = min(rng.uniform(*BAR_WIDTH), length)
    return ToolPart(shape, length, width, height, pose)


def _non_hammer_parts(rng: np.random.Generator) -> list[ToolPart] | None:
    count = int(rng.integers(1, 5))
    parts = [_random_part(rng, PlanarPose(0.0, 0.0, rng.uniform(-math.pi, math.pi)))]
    for _ in range(count - 1):
        anchor = sample_union(parts, 1, rng)[0]
        pose = PlanarPose(anchor[0], anchor[1], rng.uniform(-math.pi, math.pi))
        part = _random_part(rng, pose)
        if overlap_area(part, parts) < MIN_OVERLAP_AREA:
            return None
        parts.append(part)
    return parts


def generate_tool(category: ToolCategory | str, seed: int, tool_id: str | None = None) -> ToolSpec:
    """Generate a connected tool of the given category, deterministic in seed.

    Raises:
        GenerationFailedError: After ``MAX_REJECTIONS`` rejected draws
    """
    category = ToolCategory(category)
    rng = make_rng(seed, STREAM_TOOLGEN)
    identifier = tool_id or f"{category.value}-{seed}"
    for _ in range(MAX_REJECTIONS):
        parts = _hammer_parts(rng) if category is ToolCategory.HAMMER else _non_hammer_parts(rng)
        if parts is None:
            continue
        spec = ToolSpec(identifier, category, tuple(_recentered(parts, rng)), seed)
        if MIN_BOUNDING_RADIUS <= bounding_radius(spec) <= MAX_BOUNDING_RADIUS:
            return spec
    raise GenerationFailedError(
        f"no valid {category.value} after {MAX_REJECTIONS} rejections (seed {seed})"
    )


def render_cloud(spec: ToolSpec, m: int, noise_sd: float, seed: int) -> PointCloud:
    """Sample the top surface of the tool, in the tool frame.

    Points are uniform by area over the union of footprints, heights are the
    covering part's height, and (x, y) get isotropic Gaussian noise.

    Raises:
        GenerationFailedError: If the spec has no usable footprint
    """
    if m < MIN_RENDER_POINTS:
        raise ValueError(f"m must be >= {MIN_RENDER_POINTS}")
    if noise_sd < 0.0:
        raise ValueError("noise_sd must be non-negative")
    if spec.total_area <= 0.0:
        raise GenerationFailedError(f"tool {spec.id} has no footprint")
    rng = make_rng(seed, STREAM_RENDER)
    xy = sample_union(spec.parts, m, rng)
    z = surface_height(spec.parts, xy)
    if noise_sd > 0.0:
        xy = xy + rng.normal(0.0, noise_sd, size=xy.shape)
    return PointCloud(np.column_stack([xy, z]))


def generate_part(seed: int) -> ToolPart:
    """A single random part centered at the tool-frame origin, deterministic in seed."""
    rng = make_rng(seed, STREAM_TOOLGEN, 1)
    return _random_part(rng, PlanarPose.identity())
