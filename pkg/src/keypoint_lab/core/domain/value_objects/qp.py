"""Quadratic program value objects for action optimization."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import FloatArray, normalize_angle


def _frozen(values: object, shape: tuple[int, ...] | None = None) -> FloatArray:
    array = np.array(values, dtype=np.float64, copy=True)
    if shape is not None and array.shape != shape:
        raise ValueError(f"expected shape {shape}, got {array.shape}")
    if not np.all(np.isfinite(array)):
        raise ValueError("values must be finite")
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class ForceSpec:
    """Force components (alpha, beta) = x_r - x_t and the tool angle gamma."""

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self) -> None:
        if not all(math.isfinite(v) for v in (self.alpha, self.beta, self.gamma)):
            raise ValueError("force spec must be finite")
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))
        object.__setattr__(self, "gamma", normalize_angle(float(self.gamma)))

    @property
    def is_degenerate(self) -> bool:
        """True when (alpha, beta) is the zero vector."""
        return self.alpha == 0.0 and self.beta == 0.0


@dataclass(frozen=True, eq=False)
class QPProblem:
    """minimize z^T Q z + b^T z subject to H z >= eps, with z = [x_g, y_g, x_f, y_f]."""

    Q: FloatArray
    b: FloatArray
    H: FloatArray
    eps: FloatArray

    def __post_init__(self) -> None:
        q = _frozen(self.Q, (4, 4))
        if not np.array_equal(q, q.T):
            raise ValueError("Q must be symmetric")
        if not np.all(np.linalg.eigvalsh(q) > 0.0):
            raise ValueError("Q must be positive definite")
        h = _frozen(self.H)
        if h.ndim != 2 or h.shape[1] != 4:
            raise ValueError(f"H must have shape (k, 4), got {h.shape}")
        object.__setattr__(self, "Q", q)
        object.__setattr__(self, "b", _frozen(self.b, (4,)))
        object.__setattr__(self, "H", h)
        object.__setattr__(self, "eps", _frozen(self.eps, (h.shape[0],)))

    def objective(self, z: FloatArray) -> float:
        """f(z) = z^T Q z + b^T z."""
        z = np.asarray(z, dtype=np.float64)
        return float(z @ self.Q @ z + self.b @ z)

    def gradient(self, z: FloatArray) -> FloatArray:
        return np.asarray(2.0 * self.Q @ np.asarray(z, dtype=np.float64) + self.b)

    def is_feasible(self, z: FloatArray, tol: float = 1e-9) -> bool:
        return bool(np.all(self.H @ np.asarray(z) >= self.eps - tol))

    def dump(self) -> str:
        """Plain-text dump, row-major with 17 significant digits."""
        lines = []
        for name, matrix in (
            ("Q", self.Q),
            ("b", self.b.reshape(1, -1)),
            ("H", self.H),
            ("eps", self.eps.reshape(1, -1)),
        ):
            lines.append(f"{name} {matrix.shape[0]} {matrix.shape[1]}")
            lines.extend(" ".join(f"{v:.17g}" for v in row) for row in matrix)
        return "\n".join(lines) + "\n"


@dataclass(frozen=True, eq=False)
class QPSolution:
    """Minimizer z of a QPProblem with its multipliers and KKT residual."""

    z: FloatArray
    objective: float
    active: tuple[int, ...]
    multipliers: FloatArray
    kkt_residual: float
    iterations: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "z", _frozen(self.z, (4,)))
        object.__setattr__(self, "multipliers", _frozen(self.multipliers))
        object.__setattr__(self, "active", tuple(int(i) for i in self.active))

    @property
    def grasp(self) -> FloatArray:
        """(x_g*, y_g*)."""
        return self.z[:2].copy()

    @property
    def function(self) -> FloatArray:
        """(x_f*, y_f*)."""
        return self.z[2:].copy()
