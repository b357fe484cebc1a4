"""Training loops for the proposal and evaluation heads."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy.stats import rankdata

from ...value_objects.learning import HeadKind, Hyper, NetParams, Normalization, TrainBatch
from ..exceptions import NoNegativeDataError, NoPositiveDataError
from ..geometry import STREAM_TRAIN, make_rng
from .adam import Adam
from .layers import (
    Array,
    Layer,
    bce_with_logits,
    kl_standard_normal,
    l1_loss,
    mlp_backward,
    mlp_forward,
)
from .networks import (
    DECODER,
    ENCODER,
    FEATURE_DIM,
    RECOGNITION,
    SCORER,
    encode_backward,
    encode_points,
    init_evaluation,
    init_proposal,
    layers_of,
)

TRAIN_DTYPE = np.float32
MIN_PROPOSAL_POSITIVES = 32


@dataclass(frozen=True)
class ProposalLoss:
    """Total proposal loss and its two terms."""

    total: float
    reconstruction: float
    kl: float


def proposal_loss(
    layers: Sequence[Layer],
    points: Array,
    targets: Array,
    noise: Array,
    kl_weight: float,
) -> tuple[ProposalLoss, list[Layer]]:
    """Reconstruction l1 plus weighted KL, with gradients for every layer.

    ``points`` is (B, P, 3), ``targets`` (B, 6) and ``noise`` (B, latent).
    """
    enc, dec, rec = layers[ENCODER], layers[DECODER], layers[RECOGNITION]
    latent = noise.shape[1]
    feature, enc_caches, argmax = encode_points(points, enc)

    rec_out, rec_caches = mlp_forward(np.hstack([feature, targets]), rec, activate_last=False)
    mu, logvar = rec_out[:, :latent], rec_out[:, latent:]
    std = np.exp(0.5 * logvar)
    z = mu + std * noise
    pred, dec_caches = mlp_forward(np.hstack([feature, z]), dec, activate_last=False)

    reconstruction, grad_pred = l1_loss(pred, targets)
    kl, grad_mu_kl, grad_logvar_kl = kl_standard_normal(mu, logvar)

    grad_dec_in, dec_grads = mlp_backward(grad_pred, dec, dec_caches)
    grad_z = grad_dec_in[:, FEATURE_DIM:]
    grad_mu = grad_z + kl_weight * grad_mu_kl
    grad_logvar = grad_z * noise * 0.5 * std + kl_weight * grad_logvar_kl
    grad_rec_in, rec_grads = mlp_backward(np.hstack([grad_mu, grad_logvar]), rec, rec_caches)

    grad_feature = grad_dec_in[:, :FEATURE_DIM] + grad_rec_in[:, :FEATURE_DIM]
    _, enc_grads = encode_backward(grad_feature, enc, enc_caches, argmax, points.shape[-2])
    loss = ProposalLoss(reconstruction + kl_weight * kl, reconstruction, kl)
    return loss, [*enc_grads, *dec_grads, *rec_grads]


def evaluation_loss(
    layers: Sequence[Layer], points: Array, keypoints: Array, labels: Array
) -> tuple[float, list[Layer]]:
    """Mean sigmoid cross-entropy of the scorer, with gradients for every layer."""
    enc, scorer = layers[ENCODER], layers[SCORER]
    feature, enc_caches, argmax = encode_points(points, enc)
    logits, scorer_caches = mlp_forward(np.hstack([feature, keypoints]), scorer, activate_last=False)
    loss, grad_logits = bce_with_logits(logits[:, 0], labels)
    grad_in, scorer_grads = mlp_backward(grad_logits[:, None], scorer, scorer_caches)
    _, enc_grads = encode_backward(
        grad_in[:, :FEATURE_DIM], enc, enc_caches, argmax, points.shape[-2]
    )
    return loss, [*enc_grads, *scorer_grads]


def sample_points(
    clouds: Sequence[NDArray[np.float64]],
    indices: NDArray[np.intp],
    count: int,
    rng: np.random.Generator,
) -> Array:
    """(B, count, 3) batch of clouds resampled with replacement."""
    out = np.empty((len(indices), count, 3), dtype=TRAIN_DTYPE)
    for row, i in enumerate(indices):
        cloud = clouds[int(i)]
        out[row] = cloud[rng.integers(0, len(cloud), size=count)]
    return out


def _flatten(layers: Sequence[Layer]) -> list[Array]:
    return [array for pair in layers for array in pair]


def train_proposal(
    data: TrainBatch, h: Hyper, loss_log: list[ProposalLoss] | None = None
) -> NetParams:
    """Fit a proposal head to the positive examples of ``data``.

    Runs exactly ``h.iterations`` Adam steps. Each step draws a batch with
    replacement, resamples every cloud to ``h.train_points`` points and
    draws fresh reparameterization noise, all from the seeded stream.

    Raises:
        NoPositiveDataError: If ``data`` has fewer than 32 positive examples
    """
    positives = data.positives()
    if len(positives) < MIN_PROPOSAL_POSITIVES:
        raise NoPositiveDataError(
            f"proposal training needs at least {MIN_PROPOSAL_POSITIVES} positive examples, "
            f"got {len(positives)}"
        )
    normalization = Normalization(train_points=h.train_points)
    initial = init_proposal(h.latent_dim, h.seed, normalization)
    layers = layers_of(initial, TRAIN_DTYPE)
    adam = Adam(_flatten(layers), h.learning_rate)
    rng = make_rng(h.seed, STREAM_TRAIN, HeadKind.PROPOSAL.code)
    targets_all = positives.keypoints.astype(TRAIN_DTYPE)

    for _ in range(h.iterations):
        idx = rng.integers(0, len(positives), size=h.batch_size)
        points = sample_points(positives.clouds, idx, h.train_points, rng)
        noise = rng.standard_normal((h.batch_size, h.latent_dim)).astype(TRAIN_DTYPE)
        loss, grads = proposal_loss(layers, points, targets_all[idx], noise, h.kl_weight)
        adam.step(_flatten(grads))
        if loss_log is not None:
            loss_log.append(loss)
    return NetParams.from_arrays(HeadKind.PROPOSAL, adam.params, normalization)


def train_evaluation(
    data: TrainBatch, h: Hyper, loss_log: list[float] | None = None
) -> NetParams:
    """Fit an evaluation head with class-balanced batches.

    Each batch holds ceil(B/2) positives and floor(B/2) negatives drawn with
    replacement from the seeded stream.

    Raises:
        NoPositiveDataError: If there is no positive example
        NoNegativeDataError: If there is no negative example
    """
    positive = np.flatnonzero(data.labels == 1)
    negative = np.flatnonzero(data.labels == 0)
    if len(positive) == 0:
        raise NoPositiveDataError("evaluation training needs positive examples")
    if len(negative) == 0:
        raise NoNegativeDataError("evaluation training needs negative examples")
    normalization = Normalization(train_points=h.train_points)
    initial = init_evaluation(h.seed, normalization)
    layers = layers_of(initial, TRAIN_DTYPE)
    adam = Adam(_flatten(layers), h.learning_rate)
    rng = make_rng(h.seed, STREAM_TRAIN, HeadKind.EVALUATION.code)
    keypoints_all = data.keypoints.astype(TRAIN_DTYPE)
    labels_all = data.labels.astype(TRAIN_DTYPE)
    n_pos = (h.batch_size + 1) // 2
    n_neg = h.batch_size - n_pos

    for _ in range(h.iterations):
        idx = np.concatenate(
            [
                positive[rng.integers(0, len(positive), size=n_pos)],
                negative[rng.integers(0, len(negative), size=n_neg)],
            ]
        )
        points = sample_points(data.clouds, idx, h.train_points, rng)
        loss, grads = evaluation_loss(layers, points, keypoints_all[idx], labels_all[idx])
        adam.step(_flatten(grads))
        if loss_log is not None:
            loss_log.append(loss)
    return NetParams.from_arrays(HeadKind.EVALUATION, adam.params, normalization)


def roc_auc(scores: Sequence[float], labels: Sequence[int]) -> float:
    """Area under the ROC curve via the rank-sum statistic (ties averaged)."""
    s = np.asarray(scores, dtype=np.float64)
    y = np.asarray(labels).astype(bool)
    n_pos, n_neg = int(y.sum()), int((~y).sum())
    if n_pos == 0 or n_neg == 0:
        raise ValueError("AUC needs both classes")
    ranks = rankdata(s)
    return float((ranks[y].sum() - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg))


def accuracy(scores: Sequence[float], labels: Sequence[int], threshold: float = 0.5) -> float:
    """Fraction of examples whose thresholded score matches the label."""
    predicted = np.asarray(scores) >= threshold
    return float(np.mean(predicted == np.asarray(labels).astype(bool)))
