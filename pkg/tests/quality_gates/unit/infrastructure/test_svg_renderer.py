"""Tests for SVG keypoint overlays."""

from pathlib import Path

import numpy as np
import pytest

from keypoint_lab.core.application.services.exceptions import ArtifactIOError
from keypoint_lab.core.domain.value_objects.creation import CreationResult, PartPose
from keypoint_lab.core.domain.value_objects.geometry import PointCloud
from keypoint_lab.core.domain.value_objects.keypoints import ToolKeypoints
from keypoint_lab.core.domain.value_objects.task import EnvKeypoints
from keypoint_lab.infrastructure.io.svg_renderer import (
    ARROW_LENGTH,
    VIEW_MARGIN,
    SvgRenderer,
    compute_view_bounds,
)

K = ToolKeypoints((-0.05, 0.0), (0.05, 0.0), (0.05, 1.0))


class TestViewBounds:
    """Test the view expansion."""

    def test_covers_cloud_and_margin(self) -> None:
        """Test bounds of a bare cloud."""
        xy = np.array([[0.0, 0.0], [0.1, 0.2]])

        bounds = compute_view_bounds(xy)

        assert bounds == pytest.approx(
            (-VIEW_MARGIN, 0.1 + VIEW_MARGIN, -VIEW_MARGIN, 0.2 + VIEW_MARGIN)
        )

    def test_includes_effect_point_and_arrow(self) -> None:
        """Test that keypoints and the force arrow stay inside the view."""
        env = EnvKeypoints((0.0, 0.0), (0.0, 0.1))

        xmin, xmax, ymin, ymax = compute_view_bounds(np.zeros((1, 2)), K, env)

        assert ymax == pytest.approx(1.0 + VIEW_MARGIN)
        assert ymax >= ARROW_LENGTH
        assert xmin <= -0.05 and xmax >= 0.05

    def test_empty_input(self) -> None:
        """Test the bounds of nothing."""
        assert compute_view_bounds(np.zeros((0, 2))) == (
            -VIEW_MARGIN,
            VIEW_MARGIN,
            -VIEW_MARGIN,
            VIEW_MARGIN,
        )


class TestSvgRenderer:
    """Test rendering output."""

    def test_svg_is_byte_stable(self, stick_cloud: PointCloud) -> None:
        """Test that rendering twice gives identical bytes."""
        renderer = SvgRenderer()

        first = renderer.render_keypoints(stick_cloud, K, title="stick")
        second = renderer.render_keypoints(stick_cloud, K, title="stick")

        assert first.startswith(b"<?xml")
        assert b"<svg" in first
        assert first == second

    def test_creation_frames(self, stick_cloud: PointCloud) -> None:
        """Test one frame for the start and one per accepted step."""
        cloud = PointCloud(stick_cloud.points[:50])
        moved = (PartPose(0.01, 0.0, 0.2),)
        result = CreationResult(
            poses=moved,
            scores=(0.4, 0.5),
            cloud=cloud,
            converged=True,
            gradient_norm=0.0,
            pose_history=(moved,),
        )

        frames = SvgRenderer().render_creation_frames([cloud], result, K)

        assert len(frames) == 2
        assert all(b"<svg" in f for f in frames)
        assert frames[0] != frames[1]

    def test_write_failure(self, tmp_path: Path) -> None:
        """Test that IO failures become artifact errors."""
        blocker = tmp_path / "file"
        blocker.write_text("x", encoding="utf-8")

        with pytest.raises(ArtifactIOError):
            SvgRenderer.write(blocker / "a.svg", b"<svg/>")
