"""Tests for scenes, grasp sampling and quasi-static execution."""

import math
from itertools import pairwise

import numpy as np
import pytest

from keypoint_lab.core.domain.services.simulator import (
    GRASP_CANDIDATE_COUNT,
    contact_distance,
    execute,
    make_task,
    place_for_action,
    sample_grasp_candidates,
)
from keypoint_lab.core.domain.services.simulator.grasps import grasp_matches
from keypoint_lab.core.domain.services.simulator.scenes import (
    D_NAIL,
    SLOT_GAP,
    STAGING_X,
    STAGING_Y,
)
from keypoint_lab.core.domain.services.toolgen import render_cloud
from keypoint_lab.core.domain.value_objects.geometry import PlanarPose, PointCloud
from keypoint_lab.core.domain.value_objects.task import (
    GraspPose,
    ManipAction,
    TargetDisk,
    TaskKind,
    TaskScene,
)
from keypoint_lab.core.domain.value_objects.tool import (
    PartShape,
    ToolCategory,
    ToolPart,
    ToolSpec,
)


def _first_grasp(cloud: PointCloud, scene: TaskScene) -> GraspPose:
    return sample_grasp_candidates(cloud, GRASP_CANDIDATE_COUNT, scene.seed)[0]


def _reach_action(scene: TaskScene) -> ManipAction:
    """Tool x axis turned to +y, far end resting under the reaching target."""
    ax = scene.targets[0].center[0]
    ay = scene.targets[0].center[1] - 0.10
    return ManipAction((ax, ay - 0.012), math.pi / 2.0, 0.05, PlanarPose.identity())


class TestMakeTask:
    """Test task scene construction."""

    def test_hammering_layout(self) -> None:
        """Test nail, slot walls and keypoints of the hammering scene."""
        scene = make_task(TaskKind.HAMMERING, 3)
        nail = scene.targets[0]

        assert len(scene.targets) == 1 and len(scene.walls) == 2
        assert nail.radius == 0.01
        assert scene.required_displacement == 0.03
        assert scene.env_keypoints.target == pytest.approx((nail.center[0], nail.center[1] - 0.01))
        assert [w.ymin for w in scene.walls] == pytest.approx([nail.center[1]] * 2)
        assert scene.walls[1].xmin - scene.walls[0].xmax == pytest.approx(SLOT_GAP)
        np.testing.assert_allclose(scene.env_keypoints.force, (0.0, 0.1), atol=1e-12)
        assert scene.corridor is None

    def test_pushing_layout(self) -> None:
        """Test the row of three disks."""
        scene = make_task(TaskKind.PUSHING, 3)
        xs = [t.center[0] for t in scene.targets]

        assert len(scene.targets) == 3 and not scene.walls
        np.testing.assert_allclose(np.diff(xs), [0.05, 0.05])
        assert scene.env_keypoints.target[0] == pytest.approx(xs[1])
        assert scene.required_displacement == 0.05

    def test_reaching_layout(self) -> None:
        """Test tunnel walls, corridor and target depth."""
        scene = make_task(TaskKind.REACHING, 3)
        corridor = scene.corridor

        assert corridor is not None
        assert corridor.xmax - corridor.xmin == pytest.approx(0.04)
        assert scene.targets[0].radius == 0.012
        assert scene.targets[0].center[1] - corridor.ymin == pytest.approx(0.10)
        assert scene.walls[0].xmax == pytest.approx(corridor.xmin)
        assert scene.walls[1].xmin == pytest.approx(corridor.xmax)

    @pytest.mark.parametrize("kind", list(TaskKind))
    def test_tool_starts_in_staging_area(self, kind: TaskKind) -> None:
        """Test that the start pose lies in the staging area."""
        for seed in range(5):
            pose = make_task(kind, seed).tool_pose
            assert STAGING_X[0] <= pose.x <= STAGING_X[1]
            assert STAGING_Y[0] <= pose.y <= STAGING_Y[1]

    def test_deterministic_for_seed(self) -> None:
        """Test that the same seed builds the same scene."""
        assert make_task("pushing", 11) == make_task("pushing", 11)
        assert make_task("pushing", 11) != make_task("pushing", 12)


class TestGraspCandidates:
    """Test antipodal grasp sampling."""

    def test_candidates_sorted_and_feasible(self, stick_cloud: PointCloud) -> None:
        """Test ordering, width limits and suppression radius."""
        grasps = sample_grasp_candidates(stick_cloud, 32, seed=1)

        assert 0 < len(grasps) <= 32
        qualities = [g.quality for g in grasps]
        assert qualities == sorted(qualities, reverse=True)
        assert all(0.004 <= g.width <= 0.08 for g in grasps)
        mids = np.array([g.position for g in grasps])
        for a in range(len(mids)):
            for b in range(a + 1, len(mids)):
                assert np.hypot(*(mids[a] - mids[b])) > 0.004

    def test_stick_grasped_across_width(self, stick_cloud: PointCloud) -> None:
        """Test that the best stick grasp closes across the narrow side."""
        best = sample_grasp_candidates(stick_cloud, 8, seed=1)[0]

        assert best.width < 0.02
        assert abs(math.sin(best.theta)) <= 0.5

    def test_deterministic(self, hammer_cloud: PointCloud) -> None:
        """Test that a seed fixes the candidates."""
        assert sample_grasp_candidates(hammer_cloud, 16, 2) == sample_grasp_candidates(
            hammer_cloud, 16, 2
        )

    def test_argument_validation(self, stick_cloud: PointCloud) -> None:
        """Test empty clouds and non-positive counts."""
        with pytest.raises(ValueError):
            sample_grasp_candidates(PointCloud(np.zeros((0, 3))), 4, 0)
        with pytest.raises(ValueError):
            sample_grasp_candidates(stick_cloud, 0, 0)

    def test_grasp_matching_is_modulo_half_turn(self) -> None:
        """Test that flipped jaws describe the same grasp."""
        a = GraspPose((0.0, 0.0), 0.1, 0.02, 1.0)
        b = GraspPose((0.001, 0.0), 0.1 + math.pi, 0.02, 1.0)
        c = GraspPose((0.0, 0.0), 0.1 + math.pi / 2.0, 0.02, 1.0)

        assert grasp_matches(a, b, 0.005, math.radians(10.0))
        assert not grasp_matches(a, c, 0.005, math.radians(10.0))


class TestContactAndPlacement:
    """Test sweep contact and rigid action placement."""

    def test_contact_distance(self) -> None:
        """Test hitting, missing and overlapping points."""
        disk = TargetDisk((0.0, 0.0), 0.02)
        up = np.array([0.0, 1.0])

        assert contact_distance(np.array([[0.0, -0.1]]), up, disk) == pytest.approx(0.08)
        assert contact_distance(np.array([[0.5, -0.1]]), up, disk) == math.inf
        assert contact_distance(np.array([[0.0, 0.01]]), up, disk) == 0.0
        assert contact_distance(np.array([[0.0, 0.1]]), up, disk) == math.inf

    def test_place_for_action(self) -> None:
        """Test that the reference lands on the action pose."""
        action = ManipAction((1.0, 1.0), math.pi / 2.0, 0.0, PlanarPose(0.1, 0.0, 0.0))

        placed = place_for_action(np.array([[0.1, 0.0], [0.2, 0.0]]), action)

        np.testing.assert_allclose(placed, [[1.0, 1.0], [1.0, 1.1]], atol=1e-12)


class TestExecute:
    """Test quasi-static execution outcomes."""

    def test_stick_pushes_all_disks(self, stick_cloud: PointCloud) -> None:
        """Test a straight push with a stick spanning the whole row."""
        scene = make_task(TaskKind.PUSHING, 5)
        ax, ay = scene.targets[1].center
        action = ManipAction((ax, ay - 0.0275), 0.0, 0.07, PlanarPose.identity())

        outcome = execute(scene, stick_cloud, _first_grasp(stick_cloud, scene), action)

        assert outcome.success
        assert outcome.grasp_ok and not outcome.collision
        assert outcome.displacement >= 0.05
        assert "displacement=" in outcome.diagnostics

    def test_missed_disk_fails(self, stick_cloud: PointCloud) -> None:
        """Test that the least-moved disk decides a push."""
        scene = make_task(TaskKind.PUSHING, 5)
        ax, ay = scene.targets[1].center
        action = ManipAction((ax + 0.1, ay - 0.0275), 0.0, 0.07, PlanarPose.identity())

        outcome = execute(scene, stick_cloud, _first_grasp(stick_cloud, scene), action)

        assert not outcome.success
        assert outcome.displacement == 0.0

    def test_unknown_grasp_rejected(self, stick_cloud: PointCloud) -> None:
        """Test that grasps off the candidate set fail before execution."""
        scene = make_task(TaskKind.PUSHING, 5)
        action = ManipAction((0.0, 0.0), 0.0, 0.07, PlanarPose.identity())
        grasp = GraspPose((1.0, 1.0), 0.0, 0.02, 0.5)

        outcome = execute(scene, stick_cloud, grasp, action)

        assert outcome == outcome.__class__(False, False, False, 0.0, "grasp-rejected")

    def test_stick_reaches_through_tunnel(self, stick_cloud: PointCloud) -> None:
        """Test reaching the target with a thin stick."""
        scene = make_task(TaskKind.REACHING, 8)

        outcome = execute(scene, stick_cloud, _first_grasp(stick_cloud, scene), _reach_action(scene))

        assert outcome.success
        assert outcome.displacement >= 0.03

    def test_wide_block_collides_with_tunnel(self, block_cloud: PointCloud) -> None:
        """Test that a tool wider than the tunnel hits the walls."""
        scene = make_task(TaskKind.REACHING, 8)

        outcome = execute(scene, block_cloud, _first_grasp(block_cloud, scene), _reach_action(scene))

        assert outcome.collision
        assert not outcome.success
        assert outcome.diagnostics.startswith("collision at step")

    def test_nearly_gap_wide_tool_violates_thin_part(self) -> None:
        """Test that a tool filling the tunnel width fails without colliding."""
        part = ToolPart(PartShape.BOX, 0.20, 0.037, 0.02, PlanarPose.identity())
        cloud = render_cloud(ToolSpec("fat", ToolCategory.NON_HAMMER, (part,), 0), 1024, 0.0, 7)
        scene = make_task(TaskKind.REACHING, 8)

        outcome = execute(scene, cloud, _first_grasp(cloud, scene), _reach_action(scene))

        assert not outcome.collision
        assert not outcome.success
        assert "thin-part violation" in outcome.diagnostics


def _strike_action(scene: TaskScene, drive: float) -> ManipAction:
    """Golden hammer upright, head end face centered on the bottom of the nail."""
    ax, ay = scene.targets[0].center
    return ManipAction((ax - 0.095, ay - 0.05), 0.0, drive, PlanarPose.identity())


class TestHammering:
    """Test that the nail slot separates narrow heads from wide faces."""

    def test_golden_hammer_drives_nail(self, hammer_cloud: PointCloud) -> None:
        """Test a full strike: the nail seats at exactly the required depth."""
        scene = make_task(TaskKind.HAMMERING, 3)
        grasp = _first_grasp(hammer_cloud, scene)

        outcome = execute(scene, hammer_cloud, grasp, _strike_action(scene, 0.08))

        assert outcome.success
        assert outcome.grasp_ok and not outcome.collision
        assert outcome.displacement == D_NAIL
        assert outcome.diagnostics == f"displacement={D_NAIL:.6f}"

    def test_short_drive_leaves_nail_proud(self, hammer_cloud: PointCloud) -> None:
        """Test that a drive shorter than the depth moves the nail only partly."""
        scene = make_task(TaskKind.HAMMERING, 3)
        grasp = _first_grasp(hammer_cloud, scene)

        outcome = execute(scene, hammer_cloud, grasp, _strike_action(scene, 0.02))

        assert not outcome.success
        assert not outcome.collision
        assert 0.0 < outcome.displacement < D_NAIL

    def test_wide_face_hits_slot_walls(self, block_cloud: PointCloud) -> None:
        """Test that a face wider than the slot collides before seating the nail."""
        scene = make_task(TaskKind.HAMMERING, 3)
        ax, ay = scene.targets[0].center
        action = ManipAction((ax, ay - 0.04), 0.0, 0.08, PlanarPose.identity())

        outcome = execute(scene, block_cloud, _first_grasp(block_cloud, scene), action)

        assert outcome.collision
        assert not outcome.success
        assert outcome.displacement == 0.0
        assert outcome.diagnostics.startswith("collision at step")

    def test_overdrive_is_not_a_collision(self, hammer_cloud: PointCloud) -> None:
        """Test that a seated nail stops a narrow head however long the drive."""
        scene = make_task(TaskKind.HAMMERING, 3)
        grasp = _first_grasp(hammer_cloud, scene)

        outcome = execute(scene, hammer_cloud, grasp, _strike_action(scene, 0.2))

        assert outcome.success
        assert outcome.displacement == D_NAIL


class TestExecuteProperties:
    """Test determinism and monotonicity of execution."""

    def test_bit_exact_repeats(self, hammer_cloud: PointCloud) -> None:
        """Test that one episode executed 100 times gives the same outcome."""
        scene = make_task(TaskKind.HAMMERING, 3)
        grasp = _first_grasp(hammer_cloud, scene)
        action = _strike_action(scene, 0.05)
        first = execute(scene, hammer_cloud, grasp, action)

        for _ in range(100):
            again = execute(scene, hammer_cloud, grasp, action)
            assert again == first
            assert again.displacement.hex() == first.displacement.hex()

    def test_nail_displacement_monotone(self, hammer_cloud: PointCloud) -> None:
        """Test that a longer drive never moves the nail less."""
        scene = make_task(TaskKind.HAMMERING, 3)
        grasp = _first_grasp(hammer_cloud, scene)

        moved = [
            execute(scene, hammer_cloud, grasp, _strike_action(scene, d)).displacement
            for d in np.linspace(0.0, 0.15, 31)
        ]

        assert all(b >= a for a, b in pairwise(moved))
        assert moved[0] == 0.0 and moved[-1] == D_NAIL

    def test_push_displacement_monotone(self, stick_cloud: PointCloud) -> None:
        """Test monotone displacement for a straight push."""
        scene = make_task(TaskKind.PUSHING, 5)
        ax, ay = scene.targets[1].center
        grasp = _first_grasp(stick_cloud, scene)

        def push(drive: float) -> ManipAction:
            return ManipAction((ax, ay - 0.0275), 0.0, drive, PlanarPose.identity())

        moved = [
            execute(scene, stick_cloud, grasp, push(d)).displacement
            for d in np.linspace(0.0, 0.12, 25)
        ]

        assert all(b >= a for a, b in pairwise(moved))
        assert moved[-1] > moved[0]

    def test_success_requires_grasp_and_no_collision(
        self, hammer_cloud: PointCloud, stick_cloud: PointCloud, block_cloud: PointCloud
    ) -> None:
        """Test that success implies an accepted grasp and no collision."""
        rng = np.random.default_rng(2024)
        clouds = [hammer_cloud, stick_cloud, block_cloud]
        kinds = list(TaskKind)

        for i in range(60):
            scene = make_task(kinds[i % 3], int(rng.integers(0, 1000)))
            cloud = clouds[int(rng.integers(0, 3))]
            candidates = sample_grasp_candidates(cloud, GRASP_CANDIDATE_COUNT, scene.seed)
            if rng.random() < 0.8:
                grasp = candidates[int(rng.integers(0, len(candidates)))]
            else:
                position = tuple(rng.uniform(-0.2, 0.2, 2))
                grasp = GraspPose(position, rng.uniform(-3.0, 3.0), 0.02, 0.5)
            ax, ay = scene.env_keypoints.target
            action = ManipAction(
                (ax + rng.uniform(-0.15, 0.15), ay + rng.uniform(-0.12, 0.0)),
                rng.uniform(-math.pi, math.pi),
                rng.uniform(0.0, 0.15),
                PlanarPose.identity(),
            )

            outcome = execute(scene, cloud, grasp, action)

            if outcome.success:
                assert outcome.grasp_ok and not outcome.collision
            if outcome.collision or not outcome.grasp_ok:
                assert not outcome.success
                assert outcome.displacement == 0.0
