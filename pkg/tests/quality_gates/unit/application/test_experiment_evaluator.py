"""Tests for held-out evaluation and report cells."""

import pytest

from keypoint_lab.core.application.dto.eval_report import CellResult, EvalReport
from keypoint_lab.core.application.services.exceptions import MissingArtifactError
from keypoint_lab.core.application.services.experiment_evaluator import (
    EvalEpisode,
    ExperimentEvaluator,
    MethodUnderTest,
    build_template_library,
    methods_for_task,
    recompute_report,
)
from keypoint_lab.core.application.services.policies import FixedPolicy
from keypoint_lab.core.application.services.statistics import wilson_interval
from keypoint_lab.core.domain.repositories.tool_catalog_repository import CatalogEntry
from keypoint_lab.core.domain.services.learner import init_evaluation, init_proposal
from keypoint_lab.core.domain.value_objects.episode import EpisodeRecord, PolicyKind
from keypoint_lab.core.domain.value_objects.geometry import PlanarPose, PointCloud
from keypoint_lab.core.domain.value_objects.keypoints import ToolKeypoints
from keypoint_lab.core.domain.value_objects.task import GraspPose, ManipAction, TaskKind
from tests.quality_gates.fixtures.repositories import (
    InMemoryDatasetRepository,
    InMemoryModelRepository,
)

K = ToolKeypoints((0.0, 0.0), (0.1, 0.0), (0.1, 1.0))
GRASP = GraspPose((0.0, 0.0), 0.0, 0.02, 1.0)
ACTION = ManipAction((0.0, 0.0), 0.0, 0.05, PlanarPose.identity())


def _record(ordinal: int, success: bool, task: TaskKind = TaskKind.PUSHING) -> EpisodeRecord:
    return EpisodeRecord(
        ordinal, task, "t", 0, 0, ordinal, K, GRASP, ACTION, success, PolicyKind.HEURISTIC
    )


def _episode(method: str, test_category: str, success: bool) -> EvalEpisode:
    return EvalEpisode(method, "all", test_category, _record(0, success))


class TestTemplateLibrary:
    """Test library construction from a dataset."""

    def test_only_successes_in_order(self, stick_cloud: PointCloud) -> None:
        """Test filtering, ordering and the size cap."""
        records = [_record(i, i % 2 == 0) for i in range(6)]
        clouds = [stick_cloud] * 6

        library = build_template_library(records, clouds, limit=2)

        assert len(library) == 2
        assert all(entry.keypoints == K for entry in library)
        assert len(build_template_library(records, clouds)) == 3

    def test_empty_dataset(self) -> None:
        """Test that no records give no templates."""
        assert build_template_library([], []) == []


class TestRecomputeReport:
    """Test report cells rebuilt from episodes."""

    def test_cells_grouped_and_sorted(self) -> None:
        """Test counts, order and Wilson intervals."""
        episodes = [
            _episode("learned", "hammer", True),
            _episode("heuristic", "hammer", False),
            _episode("learned", "hammer", False),
            _episode("learned", "non-hammer", True),
        ]

        cells = recompute_report(episodes)

        assert [c.key for c in cells] == [
            ("heuristic", "pushing", "all", "hammer"),
            ("learned", "pushing", "all", "hammer"),
            ("learned", "pushing", "all", "non-hammer"),
        ]
        assert (cells[1].successes, cells[1].episodes) == (1, 2)
        assert (cells[1].ci_low, cells[1].ci_high) == pytest.approx(wilson_interval(1, 2))

    def test_episode_serialization_keeps_cell(self) -> None:
        """Test that stored episodes carry their cell labels."""
        ep = _episode("template", "hammer", True)

        back = EvalEpisode.from_dict(ep.to_dict())

        assert (back.method, back.train_category, back.test_category) == (
            "template",
            "all",
            "hammer",
        )
        assert back.record == ep.record


class TestEvalReport:
    """Test report lookups."""

    def _report(self) -> EvalReport:
        return EvalReport(
            cells=(
                CellResult("learned", "pushing", "all", "hammer", 3, 4, 0.3, 0.9),
                CellResult("learned", "pushing", "all", "non-hammer", 1, 4, 0.05, 0.7),
                CellResult("learned", "pushing", "hammer", "hammer", 2, 4, 0.15, 0.85),
            )
        )

    def test_pooled_and_total(self) -> None:
        """Test pooling across test categories."""
        report = self._report()

        assert report.pooled("learned", "pushing", "all") == (4, 8)
        assert report.total_episodes == 12

    def test_matrix_and_cell(self) -> None:
        """Test the generalization matrix and single-cell lookup."""
        report = self._report()

        assert set(report.matrix("learned", "pushing")) == {("hammer", "hammer")}
        assert report.cell("learned", "pushing", "hammer", "hammer").successes == 2
        with pytest.raises(KeyError):
            report.cell("template", "pushing", "all", "hammer")

    def test_row_formatting(self) -> None:
        """Test the rate and interval columns."""
        row = self._report().cells[0].to_row()

        assert row[4:] == ["3", "4", "0.750000", "0.300000", "0.900000"]

    def test_cell_counts_validated(self) -> None:
        """Test that successes cannot exceed episodes."""
        with pytest.raises(ValueError):
            CellResult("learned", "pushing", "all", "hammer", 5, 4, 0.0, 1.0)


class TestExperimentEvaluator:
    """Test evaluation episodes and scene sharing."""

    def _tools(self, hammer_entry: CatalogEntry, stick_entry: CatalogEntry) -> list[CatalogEntry]:
        return [hammer_entry, stick_entry]

    def test_scenes_per_tool_validated(self) -> None:
        """Test the lower bound on scenes."""
        with pytest.raises(ValueError):
            ExperimentEvaluator(0, scenes_per_tool=0)

    def test_methods_share_scenes(
        self, hammer_entry: CatalogEntry, stick_entry: CatalogEntry
    ) -> None:
        """Test that every method sees the same scene for a tool and repeat."""
        evaluator = ExperimentEvaluator(seed=4, scenes_per_tool=2)
        tools = self._tools(hammer_entry, stick_entry)
        a = evaluator.episodes_for(MethodUnderTest("a", "all", FixedPolicy(K)), TaskKind.PUSHING, tools)
        b = evaluator.episodes_for(MethodUnderTest("b", "all", FixedPolicy(K)), TaskKind.PUSHING, tools)

        assert [e.record.episode_id for e in a] == [0, 1, 2, 3]
        assert [e.record.scene_seed for e in a] == [e.record.scene_seed for e in b]
        assert [e.test_category for e in a] == ["hammer", "hammer", "non-hammer", "non-hammer"]

    def test_evaluate_builds_report(
        self, hammer_entry: CatalogEntry, stick_entry: CatalogEntry
    ) -> None:
        """Test that the report covers every method, task and test category."""
        evaluator = ExperimentEvaluator(seed=1)
        methods = {
            TaskKind.PUSHING: [MethodUnderTest("fixed", "all", FixedPolicy(K))],
            TaskKind.REACHING: [MethodUnderTest("fixed", "all", FixedPolicy(K))],
        }

        report, episodes = evaluator.evaluate(methods, self._tools(hammer_entry, stick_entry))

        assert len(episodes) == 4
        assert report.total_episodes == 4
        assert len(report.cells) == 4
        assert [t.method for t in report.timings] == ["fixed"]
        assert report.timings[0].episodes == 4


class TestMethodsForTask:
    """Test policy selection from stored artifacts."""

    def test_heuristic_only(self, model_repository: InMemoryModelRepository) -> None:
        """Test that the heuristic needs no artifacts."""
        selected = methods_for_task(
            TaskKind.PUSHING, ["heuristic"], model_repository, lambda _: InMemoryDatasetRepository(), 4
        )

        assert [(m.method, m.train_category) for m in selected] == [("heuristic", "none")]

    def test_learned_requires_all_category_models(
        self, model_repository: InMemoryModelRepository
    ) -> None:
        """Test the missing all-category model error."""
        with pytest.raises(MissingArtifactError, match="pushing-all-proposal"):
            methods_for_task(
                TaskKind.PUSHING,
                ["learned"],
                model_repository,
                lambda _: InMemoryDatasetRepository(),
                4,
            )

    def test_optional_single_category_models(
        self, model_repository: InMemoryModelRepository
    ) -> None:
        """Test that single-category heads are used when present."""
        for label in ("all", "hammer"):
            model_repository.save(f"pushing-{label}-proposal", init_proposal(4, 0))
            model_repository.save(f"pushing-{label}-evaluation", init_evaluation(0))

        selected = methods_for_task(
            TaskKind.PUSHING, ["learned"], model_repository, lambda _: InMemoryDatasetRepository(), 4
        )

        assert [(m.method, m.train_category) for m in selected] == [
            ("learned", "all"),
            ("learned", "hammer"),
        ]

    def test_matrix_variants_are_two_categories(
        self, model_repository: InMemoryModelRepository
    ) -> None:
        """Test that "all" plus the two single-category heads are the only variants."""
        for label in ("all", "hammer", "non-hammer"):
            model_repository.save(f"pushing-{label}-proposal", init_proposal(4, 0))
            model_repository.save(f"pushing-{label}-evaluation", init_evaluation(0))

        selected = methods_for_task(
            TaskKind.PUSHING, ["learned"], model_repository, lambda _: InMemoryDatasetRepository(), 4
        )

        assert [m.train_category for m in selected] == ["all", "hammer", "non-hammer"]

    def test_template_library_from_dataset(
        self, model_repository: InMemoryModelRepository, stick_cloud: PointCloud
    ) -> None:
        """Test template libraries per training category."""
        filled = InMemoryDatasetRepository()
        filled.append([_record(0, True)], [stick_cloud])

        def dataset_for(label: str) -> InMemoryDatasetRepository:
            return filled if label == "all" else InMemoryDatasetRepository()

        selected = methods_for_task(
            TaskKind.PUSHING, ["template"], model_repository, dataset_for, 4
        )

        assert [(m.method, m.train_category) for m in selected] == [("template", "all")]

    def test_template_needs_successes(self, model_repository: InMemoryModelRepository) -> None:
        """Test the missing library error."""
        with pytest.raises(MissingArtifactError, match="template library"):
            methods_for_task(
                TaskKind.PUSHING,
                ["template"],
                model_repository,
                lambda _: InMemoryDatasetRepository(),
                4,
            )
