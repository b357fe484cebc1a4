"""Tests for the tool creation service."""

import math

import numpy as np
import pytest

from keypoint_lab.core.application.services.exceptions import MissingArtifactError
from keypoint_lab.core.application.services.tool_creation import (
    BLOCK,
    STICK,
    ToolCreationService,
    desired_keypoints,
    posed_parts,
)
from keypoint_lab.core.domain.repositories.exceptions import CorruptArtifactError
from keypoint_lab.core.domain.services.learner import init_evaluation, init_proposal
from keypoint_lab.core.domain.value_objects.creation import CreationOptions, PartPose
from keypoint_lab.core.domain.value_objects.learning import NetParams
from keypoint_lab.core.domain.value_objects.task import TaskKind
from keypoint_lab.core.domain.value_objects.tool import ToolCategory
from tests.quality_gates.fixtures.repositories import InMemoryModelRepository


@pytest.fixture
def service(model_repository: InMemoryModelRepository) -> ToolCreationService:
    return ToolCreationService(model_repository)


class TestDesiredKeypoints:
    """Test the creation targets per task."""

    def test_reaching_points_along_the_stick(self) -> None:
        """Test the reaching effect direction."""
        k = desired_keypoints(TaskKind.REACHING)

        np.testing.assert_allclose(k.effect_direction, [1.0, 0.0])
        assert k.x_f[0] > k.x_g[0]

    @pytest.mark.parametrize("task", [TaskKind.HAMMERING, TaskKind.PUSHING])
    def test_striking_tasks_point_sideways(self, task: TaskKind) -> None:
        """Test that hammering and pushing strike off the stick axis."""
        k = desired_keypoints(task)

        np.testing.assert_allclose(k.effect_direction, [0.0, 1.0])
        assert k.x_f[1] > 0.0


class TestParts:
    """Test part sets and their clouds."""

    def test_fixed_parts(self) -> None:
        """Test the stick and block instance."""
        assert ToolCreationService.fixed_parts() == [STICK, BLOCK]

    def test_random_parts_spread_along_y(self) -> None:
        """Test count, determinism and the starting layout."""
        parts = ToolCreationService.random_parts(3, seed=4)

        assert parts == ToolCreationService.random_parts(3, seed=4)
        assert [p.pose.y for p in parts] == pytest.approx([0.0, 0.12, 0.24])

    @pytest.mark.parametrize("count", [0, 5])
    def test_random_part_count_bounds(self, count: int) -> None:
        """Test the one-to-four part limit."""
        with pytest.raises(ValueError, match="part count"):
            ToolCreationService.random_parts(count, 0)

    def test_render_parts(self) -> None:
        """Test one cloud per part."""
        clouds = ToolCreationService.render_parts([STICK, BLOCK], 48, 0.0, 1)

        assert [c.count for c in clouds] == [48, 48]

    def test_posed_parts_follow_poses(self) -> None:
        """Test identity poses and a pure translation."""
        clouds = ToolCreationService.render_parts([STICK, BLOCK], 48, 0.0, 1)

        moved = posed_parts(
            [STICK, BLOCK], clouds, [PartPose(), PartPose(0.01, -0.02, 0.0)]
        )

        assert (moved[0].pose.x, moved[0].pose.y) == pytest.approx((0.0, 0.0), abs=1e-12)
        assert (moved[1].pose.x, moved[1].pose.y) == pytest.approx((0.01, 0.10))
        assert moved[1].length == BLOCK.length

    def test_posed_parts_rotate_about_centroid(self) -> None:
        """Test that a part turns in place about its cloud centroid."""
        clouds = ToolCreationService.render_parts([STICK], 256, 0.0, 1)
        center = clouds[0].centroid_xy()

        (moved,) = posed_parts([STICK], clouds, [PartPose(0.0, 0.0, math.pi)])

        assert moved.pose.theta == pytest.approx(math.pi)
        assert (moved.pose.x, moved.pose.y) == pytest.approx(tuple(2.0 * center))


class TestCreate:
    """Test model loading and creation."""

    def test_missing_model(self, service: ToolCreationService) -> None:
        """Test the missing evaluation head error."""
        with pytest.raises(MissingArtifactError, match="run train"):
            service.load_evaluation("hammering-all-evaluation")

    def test_loads_stored_head(
        self, service: ToolCreationService, model_repository: InMemoryModelRepository
    ) -> None:
        """Test loading a saved evaluation head."""
        head = init_evaluation(0)
        model_repository.save("m", head)

        assert service.load_evaluation("m") is head

    def test_wrong_head_kind_propagates(
        self, service: ToolCreationService, model_repository: InMemoryModelRepository
    ) -> None:
        """Test that a proposal head is not an evaluation head."""
        model_repository.save("m", init_proposal(4, 0))

        with pytest.raises(CorruptArtifactError, match="wrong head kind"):
            service.load_evaluation("m")

    def test_create_builds_non_hammer_spec(
        self, service: ToolCreationService, random_evaluation: NetParams
    ) -> None:
        """Test the created spec, keypoints and score trajectory."""
        parts = ToolCreationService.fixed_parts()
        clouds = ToolCreationService.render_parts(parts, 64, 0.0, 2)
        k = desired_keypoints(TaskKind.HAMMERING)

        created = service.create(
            parts, clouds, k, random_evaluation, CreationOptions(max_iters=2), "made", 2
        )

        assert created.spec.id == "made"
        assert created.spec.category is ToolCategory.NON_HAMMER
        assert len(created.spec.parts) == 2
        assert created.keypoints == k
        assert created.result.final_score >= created.result.initial_score
