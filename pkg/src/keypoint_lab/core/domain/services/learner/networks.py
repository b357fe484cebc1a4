"""Point-set encoder, proposal decoder and evaluation scorer.

A proposal head stores seven layers: two encoder layers, three decoder
layers and two recognition layers. An evaluation head stores the same
encoder followed by three scorer layers. Keypoints are learned in the
cloud's normalized frame (centroid at the origin, maximum radius one).
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from ...value_objects.geometry import FloatArray, PointCloud
from ...value_objects.keypoints import ToolKeypoints
from ...value_objects.learning import HeadKind, NetParams, Normalization
from ..exceptions import BadParamsError, ProposalCollapseError
from ..geometry import STREAM_INIT, STREAM_PROPOSE, make_rng
from ..keypoints.validation import snap_keypoints, validate_keypoints
from .layers import (
    Array,
    Layer,
    LayerCache,
    lecun_normal,
    max_pool,
    max_pool_backward,
    mlp_backward,
    mlp_forward,
    sigmoid,
)

POINT_DIM = 3
FEATURE_DIM = 128
KEYPOINT_DIM = 6
ENCODER_DIMS = ((POINT_DIM, 64), (64, FEATURE_DIM))
ENCODER = slice(0, 2)
DECODER = slice(2, 5)
RECOGNITION = slice(5, 7)
SCORER = slice(2, 5)


def proposal_dims(latent_dim: int) -> tuple[tuple[int, int], ...]:
    """Layer shapes of a proposal head with the given latent size."""
    return (
        *ENCODER_DIMS,
        (FEATURE_DIM + latent_dim, 128),
        (128, 64),
        (64, KEYPOINT_DIM),
        (FEATURE_DIM + KEYPOINT_DIM, 128),
        (128, 2 * latent_dim),
    )


def evaluation_dims() -> tuple[tuple[int, int], ...]:
    """Layer shapes of an evaluation head."""
    return (*ENCODER_DIMS, (FEATURE_DIM + KEYPOINT_DIM, 128), (128, 64), (64, 1))


def latent_dim(params: NetParams) -> int:
    """Latent size of a proposal head."""
    return params.dims[DECODER.start][0] - FEATURE_DIM


def check_params(params: NetParams, kind: HeadKind) -> None:
    """Reject parameters of the wrong head kind or layer layout.

    Raises:
        BadParamsError: If the kind or any layer shape is inconsistent
    """
    if params.kind is not kind:
        raise BadParamsError(f"expected a {kind.value} head, got {params.kind.value}")
    if kind is HeadKind.PROPOSAL:
        if len(params.dims) != 7:
            raise BadParamsError(f"proposal head needs 7 layers, got {len(params.dims)}")
        expected = proposal_dims(latent_dim(params))
    else:
        expected = evaluation_dims()
    if params.dims != expected:
        raise BadParamsError(f"layer shapes {params.dims} do not match {expected}")


def layers_of(params: NetParams, dtype: type = np.float64) -> list[Layer]:
    """(W, b) pairs as writable copies in ``dtype``."""
    arrays = params.arrays(dtype)
    return list(zip(arrays[0::2], arrays[1::2], strict=True))


def _build(
    kind: HeadKind,
    dims: Sequence[tuple[int, int]],
    seed: int,
    normalization: Normalization,
    zero_last: int | None = None,
) -> NetParams:
    rng = make_rng(seed, STREAM_INIT, kind.code)
    layers = [lecun_normal(rng, fan_in, fan_out) for fan_in, fan_out in dims]
    if zero_last is not None:
        w, b = layers[zero_last]
        layers[zero_last] = (np.zeros_like(w), np.zeros_like(b))
    return NetParams(
        kind,
        tuple(w for w, _ in layers),
        tuple(b for _, b in layers),
        normalization,
    )


def init_proposal(
    latent: int, seed: int, normalization: Normalization | None = None
) -> NetParams:
    """Freshly initialized proposal head."""
    return _build(HeadKind.PROPOSAL, proposal_dims(latent), seed, normalization or Normalization())


def init_evaluation(seed: int, normalization: Normalization | None = None) -> NetParams:
    """Freshly initialized evaluation head; the zero final layer scores every input 0.5."""
    return _build(
        HeadKind.EVALUATION,
        evaluation_dims(),
        seed,
        normalization or Normalization(),
        zero_last=len(evaluation_dims()) - 1,
    )


@dataclass(frozen=True)
class CloudFrame:
    """Centroid and scale that map a cloud into the network's frame."""

    center: FloatArray
    scale: float
    scale_index: int

    @classmethod
    def of(cls, points: FloatArray, normalization: Normalization) -> CloudFrame:
        """Frame with centroid at the origin and maximum radius one.

        ``scale_index`` is the point that sets the scale, or -1 when the
        radius floor applies.
        """
        center = points.mean(axis=0)
        radii = np.linalg.norm(points - center, axis=1)
        index = int(np.argmax(radii))
        if radii[index] > normalization.radius_floor:
            return cls(center, float(radii[index]), index)
        return cls(center, normalization.radius_floor, -1)

    def points(self, points: FloatArray) -> FloatArray:
        return np.asarray((points - self.center) / self.scale)

    def keypoints(self, k: ToolKeypoints, normalization: Normalization) -> FloatArray:
        """[(x_g - c)/s, (x_f - c)/s, effect_scale * unit(e)]."""
        c = self.center[:2]
        e = k.effect_direction
        unit = e / np.linalg.norm(e)
        return np.concatenate(
            [(k.x_g - c) / self.scale, (k.x_f - c) / self.scale, normalization.effect_scale * unit]
        )

    def decode(self, vector: FloatArray) -> tuple[FloatArray, FloatArray, FloatArray]:
        """Grasp, function and effect direction in cloud coordinates."""
        c = self.center[:2]
        v = np.asarray(vector, dtype=np.float64)
        return v[0:2] * self.scale + c, v[2:4] * self.scale + c, v[4:6]


def normalize_example(
    cloud: PointCloud, k: ToolKeypoints, normalization: Normalization
) -> tuple[FloatArray, FloatArray]:
    """Normalized points and keypoint vector for one training record."""
    frame = CloudFrame.of(cloud.points, normalization)
    return frame.points(cloud.points), frame.keypoints(k, normalization)


def encode_points(
    points: Array, layers: Sequence[Layer]
) -> tuple[Array, list[LayerCache], np.ndarray]:
    """Per-point stack followed by max pooling; ``points`` is (..., M, 3)."""
    hidden, caches = mlp_forward(points, layers, activate_last=True)
    feature, argmax = max_pool(hidden)
    return feature, caches, argmax


def encode_backward(
    grad_feature: Array,
    layers: Sequence[Layer],
    caches: Sequence[LayerCache],
    argmax: np.ndarray,
    points: int,
) -> tuple[Array, list[Layer]]:
    grad_hidden = max_pool_backward(grad_feature, argmax, points)
    return mlp_backward(grad_hidden, layers, caches)


def encode(points: FloatArray, params: NetParams) -> FloatArray:
    """128-dim feature of a normalized (M, 3) cloud.

    Raises:
        BadParamsError: If the parameters or input dimensions do not match
    """
    check_params(params, params.kind)
    points = np.asarray(points, dtype=np.float64)
    if points.ndim != 2 or points.shape[1] != POINT_DIM or len(points) == 0:
        raise BadParamsError(f"encoder expects a non-empty (M, 3) cloud, got {points.shape}")
    feature, _, _ = encode_points(points, layers_of(params)[ENCODER])
    return np.asarray(feature)


def _frame_and_feature(
    cloud: PointCloud, params: NetParams, kind: HeadKind
) -> tuple[CloudFrame, FloatArray, list[Layer]]:
    check_params(params, kind)
    if cloud.count == 0:
        raise BadParamsError("network input cloud is empty")
    layers = layers_of(params)
    frame = CloudFrame.of(cloud.points, params.normalization)
    feature, _, _ = encode_points(frame.points(cloud.points), layers[ENCODER])
    return frame, feature, layers


def decode_candidates(
    cloud: PointCloud, count: int, seed: int, params: NetParams
) -> tuple[CloudFrame, FloatArray]:
    """Raw normalized 6-vectors for ``count`` seeded latent draws."""
    frame, feature, layers = _frame_and_feature(cloud, params, HeadKind.PROPOSAL)
    latent = make_rng(seed, STREAM_PROPOSE).standard_normal((count, latent_dim(params)))
    inputs = np.hstack([np.broadcast_to(feature, (count, FEATURE_DIM)), latent])
    out, _ = mlp_forward(inputs, layers[DECODER], activate_last=False)
    return frame, out


def propose(cloud: PointCloud, count: int, seed: int, params: NetParams) -> list[ToolKeypoints]:
    """Sample candidate keypoints, snapped to the cloud; invalid ones are dropped.

    Raises:
        BadParamsError: If ``params`` is not a proposal head
        ProposalCollapseError: If every candidate is invalid
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    frame, vectors = decode_candidates(cloud, count, seed, params)
    xy = cloud.xy
    kept: list[ToolKeypoints] = []
    for vector in vectors:
        if not np.all(np.isfinite(vector)):
            continue
        grasp, function, direction = frame.decode(vector)
        k = snap_keypoints(xy, grasp, function, direction)
        if k is not None and validate_keypoints(k, cloud):
            kept.append(k)
    if not kept:
        raise ProposalCollapseError(f"all {count} proposals failed validation")
    return kept


def score_candidates(
    cloud: PointCloud, candidates: Sequence[ToolKeypoints], params: NetParams
) -> FloatArray:
    """Success scores in (0, 1) for each candidate on one cloud.

    Raises:
        BadParamsError: If ``params`` is not an evaluation head
    """
    frame, feature, layers = _frame_and_feature(cloud, params, HeadKind.EVALUATION)
    if not candidates:
        return np.zeros(0)
    vectors = np.vstack([frame.keypoints(k, params.normalization) for k in candidates])
    inputs = np.hstack([np.broadcast_to(feature, (len(candidates), FEATURE_DIM)), vectors])
    logits, _ = mlp_forward(inputs, layers[SCORER], activate_last=False)
    return np.asarray(sigmoid(logits[:, 0]))


def evaluate(cloud: PointCloud, k: ToolKeypoints, params: NetParams) -> float:
    """Success score of one keypoint triple."""
    return float(score_candidates(cloud, [k], params)[0])


def predict_keypoints(
    cloud: PointCloud,
    count: int,
    seed: int,
    proposal: NetParams,
    evaluation: NetParams,
) -> ToolKeypoints:
    """Best-scoring valid proposal; ties go to the earliest candidate.

    Raises:
        ProposalCollapseError: If no proposal is valid
    """
    candidates = propose(cloud, count, seed, proposal)
    scores = score_candidates(cloud, candidates, evaluation)
    return candidates[int(np.argmax(scores))]


def score_gradient(
    points: FloatArray, k: ToolKeypoints, params: NetParams
) -> tuple[float, FloatArray]:
    """Evaluation score and its gradient w.r.t. raw (unnormalized) point coordinates.

    The gradient includes the dependence of the centroid and scale on every
    point, with ``k`` held fixed in the cloud's coordinates.
    """
    check_params(params, HeadKind.EVALUATION)
    points = np.asarray(points, dtype=np.float64)
    norm = params.normalization
    layers = layers_of(params)
    frame = CloudFrame.of(points, norm)
    normalized = frame.points(points)
    vector = frame.keypoints(k, norm)

    feature, enc_caches, argmax = encode_points(normalized, layers[ENCODER])
    inputs = np.concatenate([feature, vector])[None, :]
    logits, scorer_caches = mlp_forward(inputs, layers[SCORER], activate_last=False)
    score = float(sigmoid(logits)[0, 0])

    grad_logit = np.array([[score * (1.0 - score)]])
    grad_inputs, _ = mlp_backward(grad_logit, layers[SCORER], scorer_caches)
    grad_feature = grad_inputs[0, :FEATURE_DIM]
    grad_vector = grad_inputs[0, FEATURE_DIM:]
    grad_normalized, _ = encode_backward(
        grad_feature, layers[ENCODER], enc_caches, argmax, len(points)
    )

    s = frame.scale
    grad_center = -grad_normalized.sum(axis=0) / s
    grad_center[:2] -= (grad_vector[0:2] + grad_vector[2:4]) / s
    grad_points = grad_normalized / s
    if frame.scale_index >= 0:
        grad_scale = -float(np.sum(grad_normalized * normalized)) / s
        grad_scale -= float(grad_vector[0:4] @ vector[0:4]) / s
        radial = normalized[frame.scale_index]  # unit vector (p* - c) / s
        grad_points[frame.scale_index] += grad_scale * radial
        grad_center -= grad_scale * radial
    grad_points += grad_center / len(points)
    return score, grad_points
