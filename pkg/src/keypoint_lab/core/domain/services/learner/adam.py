"""Adam update rule over a list of parameter arrays."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from .layers import Array


class Adam:
    """In-place Adam optimizer with bias-corrected moment estimates."""

    def __init__(
        self,
        params: Sequence[Array],
        learning_rate: float,
        beta1: float = 0.9,
        beta2: float = 0.999,
        eps: float = 1e-8,
    ) -> None:
        """Initialize optimizer state.

        Args:
            params: Arrays updated in place by ``step``
            learning_rate: Step size
            beta1: First-moment decay
            beta2: Second-moment decay
            eps: Denominator floor
        """
        self.params = list(params)
        self.learning_rate = learning_rate
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self._m = [np.zeros_like(p) for p in self.params]
        self._v = [np.zeros_like(p) for p in self.params]

    def step(self, grads: Sequence[Array]) -> None:
        if len(grads) != len(self.params):
            raise ValueError("one gradient per parameter array is required")
        self.t += 1
        correction1 = 1.0 - self.beta1**self.t
        correction2 = 1.0 - self.beta2**self.t
        for p, g, m, v in zip(self.params, grads, self._m, self._v, strict=True):
            m *= self.beta1
            m += (1.0 - self.beta1) * g
            v *= self.beta2
            v += (1.0 - self.beta2) * g * g
            p -= (self.learning_rate * (m / correction1) / (np.sqrt(v / correction2) + self.eps)).astype(p.dtype)
