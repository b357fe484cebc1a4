"""Self-supervision loop: run episodes, label them by outcome, retrain."""

from __future__ import annotations

import dataclasses
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import structlog

from ...domain.repositories.episode_dataset_repository import EpisodeDatasetRepository
from ...domain.repositories.model_repository import ModelRepository
from ...domain.repositories.tool_catalog_repository import CatalogEntry
from ...domain.services.exceptions import (
    BootstrapFailedError,
    InvalidKeypointsError,
    KeypointLabError,
    NoNegativeDataError,
    NoPositiveDataError,
)
from ...domain.services.geometry import (
    STREAM_EPISODE,
    STREAM_SCENE,
    STREAM_TRAIN,
    derive_seed,
    make_rng,
    place_cloud,
)
from ...domain.services.keypoints import validate_keypoints
from ...domain.services.learner import (
    MIN_PROPOSAL_POSITIVES,
    init_evaluation,
    init_proposal,
    normalize_example,
    train_evaluation,
    train_proposal,
)
from ...domain.services.optimizer import (
    build_qp,
    default_drive,
    recover_action,
    select_grasp,
    solve_qp,
)
from ...domain.services.simulator import (
    GRASP_CANDIDATE_COUNT,
    execute,
    make_task,
    sample_grasp_candidates,
)
from ...domain.value_objects.episode import EpisodeRecord, LoopConfig, PolicyKind
from ...domain.value_objects.geometry import PointCloud
from ...domain.value_objects.keypoints import ToolKeypoints
from ...domain.value_objects.learning import HeadKind, Hyper, NetParams, Normalization, TrainBatch
from ...domain.value_objects.task import GraspPose, ManipAction, TaskScene
from ..dto.loop_result import LoopResult
from ..dto.round_summary import RoundSummary
from .exceptions import ConfigurationError, MissingArtifactError
from .policies import HeuristicPolicy, KeypointPolicy, LearnedPolicy, MixedPolicy

AUDIT_SAMPLE = 100
AUDIT_STREAM = 1 << 32


def run_episode(
    episode_id: int,
    scene: TaskScene,
    tool_id: str,
    cloud: PointCloud,
    policy: KeypointPolicy,
    seed: int,
) -> EpisodeRecord:
    """Keypoints, QP, grasp selection and execution for one world-frame cloud.

    Domain errors never escape: they produce a failed record whose
    diagnostics carry the error code. The returned record points at cloud
    ordinal 0; the caller assigns the real ordinal when appending.
    """
    keypoints: ToolKeypoints | None = None
    grasp: GraspPose | None = None
    action: ManipAction | None = None
    tag = PolicyKind.HEURISTIC

    def record(success: bool, diagnostics: str) -> EpisodeRecord:
        return EpisodeRecord(
            episode_id=episode_id,
            task=scene.kind,
            tool_id=tool_id,
            seed=seed,
            scene_seed=scene.seed,
            cloud_ordinal=0,
            keypoints=keypoints,
            grasp=grasp,
            action=action,
            success=success,
            policy=tag,
            diagnostics=diagnostics,
        )

    try:
        keypoints, tag = policy.choose(cloud, scene.kind, seed)
        if not validate_keypoints(keypoints, cloud):
            raise InvalidKeypointsError("keypoints failed validation")
        solution = solve_qp(build_qp(keypoints, scene.env_keypoints, scene.workspace))
        action = recover_action(solution, keypoints, default_drive(scene))
        candidates = sample_grasp_candidates(cloud, GRASP_CANDIDATE_COUNT, scene.seed)
        grasp = select_grasp(candidates, keypoints)
        outcome = execute(scene, cloud, grasp, action)
    except KeypointLabError as e:
        return record(False, f"{e.code}: {e}")
    return record(outcome.success, outcome.diagnostics)


def replay_record(record: EpisodeRecord, cloud: PointCloud) -> bool:
    """Success bit obtained by executing the stored grasp and action again."""
    if record.grasp is None or record.action is None:
        return False
    scene = make_task(record.task, record.scene_seed)
    try:
        return execute(scene, cloud, record.grasp, record.action).success
    except KeypointLabError:
        return False


def training_batch(
    records: Sequence[EpisodeRecord],
    clouds: Sequence[PointCloud],
    normalization: Normalization | None = None,
) -> TrainBatch:
    """Normalized examples for every record that has usable keypoints."""
    norm = normalization or Normalization()
    points, vectors, labels = [], [], []
    for rec in records:
        k = rec.keypoints
        if k is None or not np.hypot(*k.effect_direction) > 0.0:
            continue
        normalized, vector = normalize_example(clouds[rec.cloud_ordinal], k, norm)
        if not np.all(np.isfinite(vector)):
            continue
        points.append(normalized)
        vectors.append(vector)
        labels.append(1 if rec.success else 0)
    return TrainBatch(tuple(points), np.array(vectors).reshape(-1, 6), np.array(labels, dtype=np.int8))


class SelfSupervisionService:
    """Runs the heuristic-bootstrapped self-supervision loop for one task."""

    def __init__(
        self,
        dataset_repository: EpisodeDatasetRepository,
        model_repository: ModelRepository,
    ) -> None:
        """Initialize the self-supervision service.

        Args:
            dataset_repository: Append-only episode store for this run
            model_repository: Store receiving the trained heads
        """
        self._dataset = dataset_repository
        self._models = model_repository
        self._logger = structlog.get_logger(__name__)

    def _episode_inputs(
        self, cfg: LoopConfig, tools: Sequence[CatalogEntry], episode_id: int
    ) -> tuple[int, TaskScene, CatalogEntry, PointCloud]:
        seed = derive_seed(cfg.seed, STREAM_EPISODE, episode_id)
        tool = tools[int(make_rng(seed, STREAM_EPISODE).integers(len(tools)))]
        scene = make_task(cfg.task, derive_seed(seed, STREAM_SCENE))
        cloud = place_cloud(tool.cloud, scene.tool_pose).quantized()
        return seed, scene, tool, cloud

    def run_round(
        self,
        cfg: LoopConfig,
        tools: Sequence[CatalogEntry],
        round_index: int,
        policy: KeypointPolicy,
    ) -> list[EpisodeRecord]:
        """Run one round's episodes and append them to the dataset in episode order."""
        first = round_index * cfg.episodes_per_round
        ids = range(first, first + cfg.episodes_per_round)

        def one(episode_id: int) -> tuple[EpisodeRecord, PointCloud]:
            seed, scene, tool, cloud = self._episode_inputs(cfg, tools, episode_id)
            return run_episode(episode_id, scene, tool.spec.id, cloud, policy, seed), cloud

        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(pool.map(one, ids))

        base = self._dataset.record_count()
        records = [rec.with_ordinal(base + i) for i, (rec, _) in enumerate(results)]
        self._dataset.append(records, [cloud for _, cloud in results])
        return records

    def _train(
        self,
        hyper: Hyper,
        previous_proposal: NetParams | None,
        previous_evaluation: NetParams | None,
    ) -> tuple[NetParams, NetParams, bool, bool]:
        records = self._dataset.load_records()
        clouds = self._dataset.load_clouds()
        normalization = Normalization(train_points=hyper.train_points)
        batch = training_batch(records, clouds, normalization)
        try:
            proposal = train_proposal(batch, hyper)
            proposal_trained = True
        except NoPositiveDataError as e:
            self._logger.warning(
                "Proposal head not retrained",
                extra={"reason": e.code, "positives": len(batch.positives())},
            )
            proposal = previous_proposal or init_proposal(hyper.latent_dim, hyper.seed, normalization)
            proposal_trained = False
        try:
            evaluation = train_evaluation(batch, hyper)
            evaluation_trained = True
        except (NoPositiveDataError, NoNegativeDataError) as e:
            self._logger.warning(
                "Evaluation head not retrained",
                extra={"reason": e.code, "examples": len(batch)},
            )
            evaluation = previous_evaluation or init_evaluation(hyper.seed, normalization)
            evaluation_trained = False
        return proposal, evaluation, proposal_trained, evaluation_trained

    def _save(self, model_prefix: str, proposal: NetParams, evaluation: NetParams) -> None:
        self._models.save(f"{model_prefix}-{HeadKind.PROPOSAL.value}", proposal)
        self._models.save(f"{model_prefix}-{HeadKind.EVALUATION.value}", evaluation)

    def train_models(self, hyper: Hyper, model_prefix: str) -> tuple[NetParams, NetParams, bool]:
        """Retrain both heads from scratch on the stored dataset and save them.

        Returns:
            Proposal head, evaluation head and whether the evaluation head
            was actually trained (single-class data leaves it untrained)

        Raises:
            MissingArtifactError: If the dataset is empty
            NoPositiveDataError: If the dataset holds too few successes for the proposal head
        """
        if self._dataset.record_count() == 0:
            raise MissingArtifactError("no episodes in the dataset; run collect")
        proposal, evaluation, proposal_trained, retrained = self._train(hyper, None, None)
        if not proposal_trained:
            raise NoPositiveDataError(
                f"proposal training needs at least {MIN_PROPOSAL_POSITIVES} successful episodes"
            )
        self._save(model_prefix, proposal, evaluation)
        return proposal, evaluation, retrained

    def run_loop(
        self,
        cfg: LoopConfig,
        tools: Sequence[CatalogEntry],
        hyper: Hyper,
        model_prefix: str,
        config_echo: str = "",
        on_round: Callable[[RoundSummary], None] | None = None,
    ) -> LoopResult:
        """Collect, label and retrain for every round of ``cfg``.

        Round 0 is pure heuristic. Later rounds mix heuristic and learned
        keypoints with the round's ``p_heuristic``. After each round both
        heads are retrained from scratch on the cumulative dataset and saved
        as ``{model_prefix}-proposal`` and ``{model_prefix}-evaluation``.
        Rounds stay heuristic until the dataset holds enough successes to
        train the proposal head.

        Raises:
            ConfigurationError: If the dataset is not empty or no tool matches
            BootstrapFailedError: If round 0 yields no successful episode
        """
        if self._dataset.record_count() != 0:
            raise ConfigurationError("self-supervision needs an empty dataset directory")
        pool = [t for t in tools if t.spec.category in cfg.categories]
        if not pool:
            raise ConfigurationError("no training tool matches the configured categories")

        heuristic = HeuristicPolicy()
        proposal: NetParams | None = None
        evaluation: NetParams | None = None
        learned_ready = False
        summaries: list[RoundSummary] = []
        positives = 0
        for round_index, p in enumerate(cfg.p_heuristic):
            policy: KeypointPolicy = heuristic
            if learned_ready and proposal is not None and evaluation is not None:
                learned = LearnedPolicy(proposal, evaluation, cfg.proposal_count)
                policy = MixedPolicy(p, heuristic, learned)
            self._logger.info(
                "Round started",
                extra={"task": cfg.task.value, "round": round_index, "p_heuristic": p},
            )
            records = self.run_round(cfg, pool, round_index, policy)
            successes = sum(1 for r in records if r.success)
            positives += successes
            if round_index == 0 and successes == 0:
                raise BootstrapFailedError(
                    f"no successful heuristic episode in {len(records)} bootstrap episodes"
                )

            round_hyper = dataclasses.replace(
                hyper, seed=derive_seed(cfg.seed, STREAM_TRAIN, round_index)
            )
            proposal, evaluation, proposal_trained, retrained = self._train(
                round_hyper, proposal, evaluation
            )
            learned_ready = learned_ready or proposal_trained
            self._save(model_prefix, proposal, evaluation)

            summary = RoundSummary(
                task=cfg.task.value,
                round_index=round_index,
                p_heuristic=p,
                episodes=len(records),
                successes=successes,
                dataset_size=self._dataset.record_count(),
                dataset_positives=positives,
                evaluation_retrained=retrained,
            )
            summaries.append(summary)
            self._logger.info(
                "Round finished",
                extra={
                    "task": summary.task,
                    "round": round_index,
                    "success_rate": summary.rate,
                    "dataset_size": summary.dataset_size,
                },
            )
            if on_round is not None:
                on_round(summary)

        self._dataset.write_manifest(config_echo)
        mismatches = self.audit(cfg.seed)
        assert proposal is not None and evaluation is not None
        return LoopResult(
            rounds=tuple(summaries),
            proposal=proposal,
            evaluation=evaluation,
            record_count=self._dataset.record_count(),
            audit_mismatches=tuple(mismatches),
        )

    def audit(self, seed: int, sample: int = AUDIT_SAMPLE) -> list[int]:
        """Episode ids among a seeded sample whose replay disagrees with the record."""
        records = self._dataset.load_records()
        clouds = self._dataset.load_clouds()
        if not records:
            return []
        rng = make_rng(seed, STREAM_EPISODE, AUDIT_STREAM)
        chosen = np.sort(rng.choice(len(records), size=min(sample, len(records)), replace=False))
        mismatches = [
            records[i].episode_id
            for i in chosen
            if replay_record(records[i], clouds[records[i].cloud_ordinal]) != records[i].success
        ]
        if mismatches:
            self._logger.error("Replay audit failed", extra={"episodes": mismatches})
        return mismatches
