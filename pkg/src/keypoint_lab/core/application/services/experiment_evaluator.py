"""Held-out evaluation of keypoint methods across tasks and tool categories."""

from __future__ import annotations

import time
from collections import defaultdict
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np
import structlog

from ...domain.repositories.episode_dataset_repository import EpisodeDatasetRepository
from ...domain.repositories.model_repository import ModelRepository
from ...domain.repositories.tool_catalog_repository import CatalogEntry
from ...domain.services.geometry import STREAM_EPISODE, STREAM_SCENE, derive_seed, place_cloud
from ...domain.services.keypoints import TemplateEntry
from ...domain.services.simulator import make_task
from ...domain.value_objects.episode import EpisodeRecord
from ...domain.value_objects.geometry import PointCloud
from ...domain.value_objects.learning import HeadKind
from ...domain.value_objects.task import TaskKind
from ..dto.eval_report import CellResult, EvalReport, TimingStats
from .artifact_layout import ALL_CATEGORIES, MATRIX_CATEGORIES, model_name
from .exceptions import MissingArtifactError
from .policies import HeuristicPolicy, KeypointPolicy, LearnedPolicy, TemplatePolicy
from .self_supervision import run_episode
from .statistics import wilson_interval

HEURISTIC_TRAIN_CATEGORY = "none"
DEFAULT_LIBRARY_SIZE = 200


@dataclass(frozen=True)
class EvalEpisode:
    """One evaluation episode with the cell it counts towards."""

    method: str
    train_category: str
    test_category: str
    record: EpisodeRecord
    seconds: float = 0.0

    def to_dict(self) -> dict[str, Any]:
        """Serialize to one line of episodes.jsonl (timing excluded)."""
        return {
            "method": self.method,
            "train_category": self.train_category,
            "test_category": self.test_category,
            **self.record.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> EvalEpisode:
        """Create episode from dictionary data."""
        payload = {
            k: v for k, v in data.items() if k not in ("method", "train_category", "test_category")
        }
        return cls(
            method=data["method"],
            train_category=data["train_category"],
            test_category=data["test_category"],
            record=EpisodeRecord.from_dict(payload),
        )


@dataclass(frozen=True)
class MethodUnderTest:
    """A keypoint policy labeled with its method name and training category."""

    method: str
    train_category: str
    policy: KeypointPolicy


def build_template_library(
    records: Sequence[EpisodeRecord],
    clouds: Sequence[PointCloud],
    limit: int = DEFAULT_LIBRARY_SIZE,
) -> list[TemplateEntry]:
    """Successful (cloud, keypoints) pairs in dataset order, at most ``limit``."""
    library: list[TemplateEntry] = []
    for rec in records:
        if rec.success and rec.keypoints is not None:
            library.append(TemplateEntry(clouds[rec.cloud_ordinal], rec.keypoints))
            if len(library) >= limit:
                break
    return library


def recompute_report(episodes: Iterable[EvalEpisode]) -> tuple[CellResult, ...]:
    """Report cells rebuilt from stored episodes, sorted by cell key."""
    counts: dict[tuple[str, str, str, str], list[int]] = defaultdict(lambda: [0, 0])
    for ep in episodes:
        key = (ep.method, ep.record.task.value, ep.train_category, ep.test_category)
        counts[key][0] += int(ep.record.success)
        counts[key][1] += 1
    cells = []
    for key in sorted(counts):
        successes, total = counts[key]
        low, high = wilson_interval(successes, total)
        cells.append(CellResult(*key, successes=successes, episodes=total, ci_low=low, ci_high=high))
    return tuple(cells)


def _timings(episodes: Sequence[EvalEpisode]) -> tuple[TimingStats, ...]:
    by_method: dict[str, list[float]] = defaultdict(list)
    for ep in episodes:
        by_method[ep.method].append(ep.seconds)
    stats = []
    for method in sorted(by_method):
        values = np.asarray(by_method[method])
        stats.append(
            TimingStats(
                method=method,
                episodes=len(values),
                mean=float(values.mean()),
                median=float(np.median(values)),
                p95=float(np.percentile(values, 95)),
            )
        )
    return tuple(stats)


class ExperimentEvaluator:
    """Runs every test tool through each method on shared scene seeds."""

    def __init__(self, seed: int, scenes_per_tool: int = 1) -> None:
        """Initialize the evaluator.

        Args:
            seed: Root seed for scene and keypoint seeds
            scenes_per_tool: Scenes drawn per test tool and task
        """
        if scenes_per_tool < 1:
            raise ValueError("scenes_per_tool must be >= 1")
        self._seed = seed
        self._scenes = scenes_per_tool
        self._logger = structlog.get_logger(__name__)

    def episodes_for(
        self,
        method: MethodUnderTest,
        task: TaskKind,
        test_tools: Sequence[CatalogEntry],
    ) -> list[EvalEpisode]:
        """Evaluate one method on one task; scenes depend only on tool index and repeat."""
        episodes = []
        for tool_index, tool in enumerate(test_tools):
            for repeat in range(self._scenes):
                seed = derive_seed(self._seed, STREAM_EPISODE, tool_index, repeat)
                scene = make_task(task, derive_seed(self._seed, STREAM_SCENE, tool_index, repeat))
                cloud = place_cloud(tool.cloud, scene.tool_pose).quantized()
                episode_id = tool_index * self._scenes + repeat
                start = time.perf_counter()
                record = run_episode(episode_id, scene, tool.spec.id, cloud, method.policy, seed)
                elapsed = time.perf_counter() - start
                episodes.append(
                    EvalEpisode(
                        method=method.method,
                        train_category=method.train_category,
                        test_category=tool.spec.category.value,
                        record=record,
                        seconds=elapsed,
                    )
                )
        return episodes

    def evaluate(
        self,
        methods: Mapping[TaskKind, Sequence[MethodUnderTest]],
        test_tools: Sequence[CatalogEntry],
    ) -> tuple[EvalReport, list[EvalEpisode]]:
        """Evaluate every (task, method) pair on the test tools.

        Returns:
            The report and the episodes it was computed from
        """
        episodes: list[EvalEpisode] = []
        for task in sorted(methods, key=lambda t: t.value):
            for method in methods[task]:
                self._logger.info(
                    "Evaluating method",
                    extra={
                        "method": method.method,
                        "task": task.value,
                        "train_category": method.train_category,
                        "tools": len(test_tools),
                    },
                )
                episodes.extend(self.episodes_for(method, task, test_tools))
        report = EvalReport(cells=recompute_report(episodes), timings=_timings(episodes))
        return report, episodes


def methods_for_task(
    task: TaskKind,
    methods: Sequence[str],
    models: ModelRepository,
    dataset_for: Callable[[str], EpisodeDatasetRepository],
    proposal_count: int,
    library_size: int = DEFAULT_LIBRARY_SIZE,
) -> list[MethodUnderTest]:
    """Policies to evaluate on one task.

    The all-category learned heads and template library are required and
    reported on their own. Hammer-only and non-hammer-only variants fill the
    2x2 generalization matrix and are used when present.

    Args:
        task: Task under evaluation
        methods: Subset of heuristic, template and learned
        models: Store holding ``{task}-{category}-{head}`` models
        dataset_for: Dataset store of a training category label
        proposal_count: Candidates drawn by the learned policy
        library_size: Cap on template library entries

    Raises:
        MissingArtifactError: If an all-category model or library is absent
    """
    selected: list[MethodUnderTest] = []
    if "heuristic" in methods:
        selected.append(MethodUnderTest("heuristic", HEURISTIC_TRAIN_CATEGORY, HeuristicPolicy()))
    for label in (ALL_CATEGORIES, *MATRIX_CATEGORIES):
        required = label == ALL_CATEGORIES
        if "template" in methods:
            dataset = dataset_for(label)
            library = build_template_library(
                dataset.load_records(), dataset.load_clouds(), library_size
            )
            if library:
                selected.append(MethodUnderTest("template", label, TemplatePolicy(library)))
            elif required:
                raise MissingArtifactError(
                    f"no successful {task.value} episodes for a template library; run collect"
                )
        if "learned" in methods:
            names = [model_name(task, label, kind) for kind in (HeadKind.PROPOSAL, HeadKind.EVALUATION)]
            if all(models.exists(n) for n in names):
                proposal = models.load(names[0], HeadKind.PROPOSAL)
                evaluation = models.load(names[1], HeadKind.EVALUATION)
                selected.append(
                    MethodUnderTest("learned", label, LearnedPolicy(proposal, evaluation, proposal_count))
                )
            elif required:
                raise MissingArtifactError(
                    f"models {names[0]} / {names[1]} not found; run collect or train"
                )
    return selected
