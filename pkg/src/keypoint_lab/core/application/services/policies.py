"""Keypoint policies used by the self-supervision loop and the evaluator."""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Sequence

from ...domain.services.geometry import STREAM_POLICY, make_rng
from ...domain.services.keypoints import TemplateEntry, heuristic_keypoints, template_keypoints
from ...domain.services.learner import predict_keypoints
from ...domain.value_objects.episode import PolicyKind
from ...domain.value_objects.geometry import PointCloud
from ...domain.value_objects.keypoints import ToolKeypoints
from ...domain.value_objects.learning import NetParams
from ...domain.value_objects.task import TaskKind


class KeypointPolicy(ABC):
    """Chooses tool keypoints for an observed cloud."""

    @abstractmethod
    def choose(
        self, cloud: PointCloud, task: TaskKind, seed: int
    ) -> tuple[ToolKeypoints, PolicyKind]:
        """Pick keypoints for one episode.

        Args:
            cloud: Observed world-frame tool cloud
            task: Task being attempted
            seed: Episode seed

        Returns:
            Keypoints and the policy that actually produced them

        Raises:
            KeypointLabError: If no keypoints can be produced
        """


class HeuristicPolicy(KeypointPolicy):
    """RANSAC main part plus clustered protrusions."""

    def choose(
        self, cloud: PointCloud, task: TaskKind, seed: int
    ) -> tuple[ToolKeypoints, PolicyKind]:
        return heuristic_keypoints(cloud, task, seed), PolicyKind.HEURISTIC


class TemplatePolicy(KeypointPolicy):
    """Keypoints transferred from the nearest library cloud."""

    def __init__(self, library: Sequence[TemplateEntry]) -> None:
        self._library = list(library)

    def choose(
        self, cloud: PointCloud, task: TaskKind, seed: int
    ) -> tuple[ToolKeypoints, PolicyKind]:
        return template_keypoints(cloud, self._library), PolicyKind.TEMPLATE


class LearnedPolicy(KeypointPolicy):
    """Best-scoring proposal of the learned heads."""

    def __init__(self, proposal: NetParams, evaluation: NetParams, proposal_count: int) -> None:
        """Initialize learned policy.

        Args:
            proposal: Proposal head
            evaluation: Evaluation head
            proposal_count: Candidates drawn per episode
        """
        self._proposal = proposal
        self._evaluation = evaluation
        self._count = proposal_count

    def choose(
        self, cloud: PointCloud, task: TaskKind, seed: int
    ) -> tuple[ToolKeypoints, PolicyKind]:
        k = predict_keypoints(cloud, self._count, seed, self._proposal, self._evaluation)
        return k, PolicyKind.LEARNED


class MixedPolicy(KeypointPolicy):
    """Heuristic with probability ``p_heuristic``, learned otherwise.

    The coin is drawn from the episode seed, so the choice replays.
    """

    def __init__(
        self, p_heuristic: float, heuristic: KeypointPolicy, learned: KeypointPolicy
    ) -> None:
        if not 0.0 <= p_heuristic <= 1.0:
            raise ValueError("p_heuristic must be in [0, 1]")
        self._p = p_heuristic
        self._heuristic = heuristic
        self._learned = learned

    def choose(
        self, cloud: PointCloud, task: TaskKind, seed: int
    ) -> tuple[ToolKeypoints, PolicyKind]:
        if make_rng(seed, STREAM_POLICY).random() < self._p:
            return self._heuristic.choose(cloud, task, seed)
        return self._learned.choose(cloud, task, seed)


class FixedPolicy(KeypointPolicy):
    """Always returns the same keypoints, whatever the cloud."""

    def __init__(self, keypoints: ToolKeypoints, tag: PolicyKind = PolicyKind.HEURISTIC) -> None:
        self._keypoints = keypoints
        self._tag = tag

    def choose(
        self, cloud: PointCloud, task: TaskKind, seed: int
    ) -> tuple[ToolKeypoints, PolicyKind]:
        return self._keypoints, self._tag
