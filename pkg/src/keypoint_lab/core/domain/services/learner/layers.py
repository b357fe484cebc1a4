"""Dense tanh stacks with hand-written reverse-mode gradients.

Every function is dtype-generic: training runs in float32 and gradient
checks feed float64 copies of the same parameters.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

Array = NDArray[np.floating]
Layer = tuple[Array, Array]


@dataclass
class LayerCache:
    """Input and output of one dense layer, and whether tanh was applied."""

    inputs: Array
    outputs: Array
    activated: bool


def lecun_normal(rng: np.random.Generator, fan_in: int, fan_out: int) -> Layer:
    """Weights drawn from N(0, 1/fan_in) with zero biases."""
    weights = rng.standard_normal((fan_in, fan_out)) / np.sqrt(fan_in)
    return weights, np.zeros(fan_out)


def mlp_forward(
    x: Array, layers: Sequence[Layer], activate_last: bool
) -> tuple[Array, list[LayerCache]]:
    """Apply x @ W + b per layer with tanh between layers.

    Leading axes of ``x`` are batch axes.
    """
    caches: list[LayerCache] = []
    h = x
    last = len(layers) - 1
    for i, (w, b) in enumerate(layers):
        z = h @ w + b
        activated = i < last or activate_last
        out = np.tanh(z) if activated else z
        caches.append(LayerCache(h, out, activated))
        h = out
    return h, caches


def mlp_backward(
    grad_out: Array, layers: Sequence[Layer], caches: Sequence[LayerCache]
) -> tuple[Array, list[Layer]]:
    """Gradients w.r.t. the stack input and every (W, b)."""
    grads: list[Layer] = [None] * len(layers)  # type: ignore[list-item]
    d = grad_out
    for i in reversed(range(len(layers))):
        cache = caches[i]
        if cache.activated:
            d = d * (1.0 - cache.outputs * cache.outputs)
        inputs = cache.inputs.reshape(-1, cache.inputs.shape[-1])
        flat = d.reshape(-1, d.shape[-1])
        grads[i] = (inputs.T @ flat, flat.sum(axis=0))
        d = d @ layers[i][0].T
    return d, grads


def max_pool(h: Array) -> tuple[Array, NDArray[np.intp]]:
    """Coordinate-wise maximum over the point axis (axis -2)."""
    argmax = np.argmax(h, axis=-2)
    pooled = np.take_along_axis(h, argmax[..., None, :], axis=-2)[..., 0, :]
    return pooled, argmax


def max_pool_backward(grad: Array, argmax: NDArray[np.intp], points: int) -> Array:
    """Route pooled gradients back to the winning point of each coordinate."""
    shape = (*grad.shape[:-1], points, grad.shape[-1])
    out = np.zeros(shape, dtype=grad.dtype)
    np.put_along_axis(out, argmax[..., None, :], grad[..., None, :], axis=-2)
    return out


def sigmoid(x: Array) -> Array:
    """Numerically stable logistic function."""
    out = np.empty_like(x)
    positive = x >= 0
    out[positive] = 1.0 / (1.0 + np.exp(-x[positive]))
    ex = np.exp(x[~positive])
    out[~positive] = ex / (1.0 + ex)
    return out


def bce_with_logits(logits: Array, labels: Array) -> tuple[float, Array]:
    """Mean sigmoid cross-entropy and its gradient w.r.t. the logits."""
    loss = np.maximum(logits, 0.0) - logits * labels + np.log1p(np.exp(-np.abs(logits)))
    grad = (sigmoid(logits) - labels) / logits.size
    return float(loss.mean()), grad


def l1_loss(pred: Array, target: Array) -> tuple[float, Array]:
    """Mean absolute error over every coordinate, with its gradient."""
    diff = pred - target
    return float(np.abs(diff).mean()), np.sign(diff) / diff.size


def kl_standard_normal(mu: Array, logvar: Array) -> tuple[float, Array, Array]:
    """Batch mean of KL(N(mu, exp(logvar)) || N(0, I)) and gradients."""
    batch = mu.shape[0]
    per_example = 0.5 * np.sum(np.exp(logvar) + mu * mu - 1.0 - logvar, axis=-1)
    d_mu = mu / batch
    d_logvar = 0.5 * (np.exp(logvar) - 1.0) / batch
    return float(per_example.mean()), d_mu, d_logvar
