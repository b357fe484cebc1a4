"""Tests for procedural tool generation and rendering."""

import math

import numpy as np
import pytest

from keypoint_lab.core.domain.services.toolgen import (
    MAX_BOUNDING_RADIUS,
    MIN_BOUNDING_RADIUS,
    bounding_radius,
    generate_part,
    generate_tool,
    part_contains,
    part_sdf,
    render_cloud,
    sample_union,
    union_contains,
)
from keypoint_lab.core.domain.services.geometry import make_rng
from keypoint_lab.core.domain.services.simulator.scenes import D_NAIL, NAIL_RADIUS, SLOT_GAP
from keypoint_lab.core.domain.value_objects.geometry import PlanarPose
from keypoint_lab.core.domain.value_objects.tool import (
    PartShape,
    ToolCategory,
    ToolPart,
    ToolSpec,
)


class TestPartGeometry:
    """Test signed distances and containment of primitives."""

    def test_box_sdf(self) -> None:
        """Test inside, boundary and outside distances of a box."""
        box = ToolPart(PartShape.BOX, 0.1, 0.02, 0.02, PlanarPose.identity())

        sdf = part_sdf(box, [[0.0, 0.0], [0.05, 0.0], [0.08, 0.0]])

        np.testing.assert_allclose(sdf, [-0.01, 0.0, 0.03], atol=1e-12)

    def test_capsule_sdf_at_cap(self) -> None:
        """Test the rounded end of a capsule."""
        capsule = ToolPart(PartShape.CAPSULE, 0.1, 0.02, 0.02, PlanarPose.identity())

        sdf = part_sdf(capsule, [[0.05, 0.0], [0.04, 0.02]])

        np.testing.assert_allclose(sdf, [0.0, 0.01], atol=1e-12)

    def test_disk_sdf_follows_pose(self) -> None:
        """Test that part poses move the footprint."""
        disk = ToolPart(PartShape.DISK, 0.04, 0.04, 0.02, PlanarPose(0.1, 0.0))

        assert part_contains(disk, [[0.11, 0.0]]).tolist() == [True]
        assert part_contains(disk, [[0.0, 0.0]]).tolist() == [False]

    def test_union_contains(self, hammer_spec: ToolSpec) -> None:
        """Test membership in the union of hammer parts."""
        mask = union_contains(hammer_spec.parts, [[0.0, 0.0], [0.095, 0.025], [0.0, 0.05]])

        assert mask.tolist() == [True, True, False]

    def test_bounding_radius_of_hammer(self, hammer_spec: ToolSpec) -> None:
        """Test the farthest corner of the golden hammer."""
        expected = math.hypot(0.10, 0.04)

        assert bounding_radius(hammer_spec) == pytest.approx(expected)


class TestSampleUnion:
    """Test area-uniform union sampling."""

    def test_exact_count_and_membership(self, hammer_spec: ToolSpec) -> None:
        """Test that every sample lies inside the tool."""
        xy = sample_union(hammer_spec.parts, 500, make_rng(1))

        assert xy.shape == (500, 2)
        assert union_contains(hammer_spec.parts, xy).all()

    def test_overlap_not_oversampled(self) -> None:
        """Test that fully overlapping copies sample like a single part."""
        part = ToolPart(PartShape.BOX, 0.1, 0.1, 0.02, PlanarPose.identity())
        xy = sample_union((part, part), 4000, make_rng(2))

        left = np.mean(xy[:, 0] < 0.0)
        assert left == pytest.approx(0.5, abs=0.05)


class TestGenerateTool:
    """Test procedural tool generation."""

    @pytest.mark.parametrize("seed", [0, 1, 2, 3])
    def test_hammer_structure(self, seed: int) -> None:
        """Test that generated hammers are a handle and a shorter head."""
        spec = generate_tool(ToolCategory.HAMMER, seed)

        assert spec.category is ToolCategory.HAMMER
        assert len(spec.parts) == 2
        handle, head = spec.parts
        assert handle.length >= 2.0 * head.length
        assert MIN_BOUNDING_RADIUS <= bounding_radius(spec) <= MAX_BOUNDING_RADIUS

    @pytest.mark.parametrize("seed", range(10))
    def test_hammer_head_fits_nail_slot(self, seed: int) -> None:
        """Test that the head end enters the slot and the handle stays clear of it."""
        handle, head = generate_tool(ToolCategory.HAMMER, seed).parts

        assert head.width < SLOT_GAP
        assert head.length / 2.0 - handle.width / 2.0 > D_NAIL - NAIL_RADIUS

    @pytest.mark.parametrize("seed", [0, 5, 11])
    def test_non_hammer_bounds(self, seed: int) -> None:
        """Test part counts and size bounds of non-hammers."""
        spec = generate_tool(ToolCategory.NON_HAMMER, seed)

        assert 1 <= len(spec.parts) <= 4
        assert MIN_BOUNDING_RADIUS <= bounding_radius(spec) <= MAX_BOUNDING_RADIUS

    def test_generation_is_deterministic(self) -> None:
        """Test that a seed fixes the tool."""
        a = generate_tool("non-hammer", 17, "x")
        b = generate_tool("non-hammer", 17, "x")

        assert a.equals(b)

    def test_default_id(self) -> None:
        """Test the id used when none is supplied."""
        assert generate_tool(ToolCategory.HAMMER, 4).id == "hammer-4"

    def test_tool_is_recentered(self) -> None:
        """Test that the footprint centroid is near the origin."""
        spec = generate_tool(ToolCategory.HAMMER, 9)
        cloud = render_cloud(spec, 4096, 0.0, 1)

        np.testing.assert_allclose(cloud.centroid_xy(), [0.0, 0.0], atol=0.005)

    def test_generate_part_is_centered(self) -> None:
        """Test that a single generated part sits at the origin."""
        part = generate_part(3)

        assert part.pose == PlanarPose.identity()
        assert part == generate_part(3)


class TestRenderCloud:
    """Test top-surface rendering."""

    def test_points_on_surface_with_part_heights(self, hammer_spec: ToolSpec) -> None:
        """Test membership and heights of noise-free points."""
        cloud = render_cloud(hammer_spec, 512, 0.0, 3)

        assert cloud.count == 512
        assert union_contains(hammer_spec.parts, cloud.xy).all()
        assert set(np.unique(cloud.points[:, 2])) <= {0.02, 0.025}

    def test_noise_only_moves_xy(self, hammer_spec: ToolSpec) -> None:
        """Test that noise perturbs x, y and leaves z identical."""
        clean = render_cloud(hammer_spec, 256, 0.0, 3)
        noisy = render_cloud(hammer_spec, 256, 0.002, 3)

        np.testing.assert_array_equal(clean.points[:, 2], noisy.points[:, 2])
        offsets = noisy.xy - clean.xy
        assert 0.001 < float(offsets.std()) < 0.003

    def test_render_is_deterministic(self, hammer_spec: ToolSpec) -> None:
        """Test that a seed fixes the cloud."""
        assert render_cloud(hammer_spec, 128, 0.001, 9).equals(
            render_cloud(hammer_spec, 128, 0.001, 9)
        )

    def test_render_argument_validation(self, hammer_spec: ToolSpec) -> None:
        """Test point-count and noise bounds."""
        with pytest.raises(ValueError):
            render_cloud(hammer_spec, 10, 0.0, 0)
        with pytest.raises(ValueError):
            render_cloud(hammer_spec, 128, -0.1, 0)
