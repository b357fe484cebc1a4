"""Value objects for the learned keypoint generator."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import NDArray

from .geometry import FloatArray


class HeadKind(str, Enum):
    """Which network a parameter set belongs to."""

    PROPOSAL = "proposal"
    EVALUATION = "evaluation"

    @property
    def code(self) -> int:
        """Byte tag used by the model file format."""
        return 0 if self is HeadKind.PROPOSAL else 1

    @classmethod
    def from_code(cls, code: int) -> HeadKind:
        if code == 0:
            return cls.PROPOSAL
        if code == 1:
            return cls.EVALUATION
        raise ValueError(f"unknown head kind code {code}")


@dataclass(frozen=True)
class Normalization:
    """Constants of the cloud/keypoint normalization.

    The cloud centroid and scale are recomputed per cloud; these are the
    constants that shape that computation.
    """

    radius_floor: float = 1e-3
    effect_scale: float = 0.5
    train_points: int = 256

    def __post_init__(self) -> None:
        if not self.radius_floor > 0.0:
            raise ValueError("radius_floor must be positive")
        if not self.effect_scale > 0.0:
            raise ValueError("effect_scale must be positive")
        if self.train_points < 1:
            raise ValueError("train_points must be >= 1")

    def as_floats(self) -> tuple[float, float, float]:
        return (self.radius_floor, self.effect_scale, float(self.train_points))

    @classmethod
    def from_floats(cls, values: tuple[float, float, float]) -> Normalization:
        return cls(float(values[0]), float(values[1]), int(round(values[2])))


@dataclass(frozen=True, eq=False)
class NetParams:
    """Immutable network parameters.

    ``weights[i]`` has shape ``dims[i]`` = (in, out); ``biases[i]`` has shape
    (out,). Arrays are stored as read-only 32-bit floats.
    """

    kind: HeadKind
    weights: tuple[NDArray[np.float32], ...]
    biases: tuple[NDArray[np.float32], ...]
    normalization: Normalization = Normalization()

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", HeadKind(self.kind))
        if len(self.weights) != len(self.biases) or not self.weights:
            raise ValueError("weights and biases must be non-empty and paired")
        weights, biases = [], []
        for w, b in zip(self.weights, self.biases, strict=True):
            w32 = np.array(w, dtype=np.float32, copy=True)
            b32 = np.array(b, dtype=np.float32, copy=True)
            if w32.ndim != 2 or b32.shape != (w32.shape[1],):
                raise ValueError(f"inconsistent layer shapes {w32.shape} / {b32.shape}")
            if not (np.all(np.isfinite(w32)) and np.all(np.isfinite(b32))):
                raise ValueError("weights must be finite")
            w32.setflags(write=False)
            b32.setflags(write=False)
            weights.append(w32)
            biases.append(b32)
        object.__setattr__(self, "weights", tuple(weights))
        object.__setattr__(self, "biases", tuple(biases))

    @property
    def dims(self) -> tuple[tuple[int, int], ...]:
        """Per-layer (in, out) dimensions."""
        return tuple((int(w.shape[0]), int(w.shape[1])) for w in self.weights)

    @property
    def parameter_count(self) -> int:
        return sum(w.size + b.size for w, b in zip(self.weights, self.biases, strict=True))

    def arrays(self, dtype: type = np.float32) -> list[NDArray[np.floating]]:
        """Writable copies, interleaved as [W0, b0, W1, b1, ...]."""
        out: list[NDArray[np.floating]] = []
        for w, b in zip(self.weights, self.biases, strict=True):
            out.append(w.astype(dtype, copy=True))
            out.append(b.astype(dtype, copy=True))
        return out

    @classmethod
    def from_arrays(
        cls,
        kind: HeadKind,
        arrays: list[NDArray[np.floating]],
        normalization: Normalization,
    ) -> NetParams:
        """Inverse of ``arrays``."""
        return cls(kind, tuple(arrays[0::2]), tuple(arrays[1::2]), normalization)  # type: ignore[arg-type]

    def equals(self, other: object) -> bool:
        """Value-based equality comparison (bit-exact weights)."""
        if not isinstance(other, NetParams):
            return False
        return (
            self.kind is other.kind
            and self.normalization == other.normalization
            and self.dims == other.dims
            and all(np.array_equal(a, b) for a, b in zip(self.arrays(), other.arrays(), strict=True))
        )


@dataclass(frozen=True, eq=False)
class TrainBatch:
    """Normalized training examples.

    Clouds may have different point counts; ``keypoints`` is an (N, 6) array
    in the normalized frame and ``labels`` an (N,) array of 0/1.
    """

    clouds: tuple[FloatArray, ...]
    keypoints: FloatArray
    labels: NDArray[np.int8]

    def __post_init__(self) -> None:
        keypoints = np.array(self.keypoints, dtype=np.float64, copy=True).reshape(-1, 6)
        labels = np.array(self.labels, dtype=np.int8, copy=True).reshape(-1)
        clouds = tuple(np.asarray(c, dtype=np.float64) for c in self.clouds)
        if not (len(clouds) == keypoints.shape[0] == labels.shape[0]):
            raise ValueError("clouds, keypoints and labels must have equal counts")
        if not np.all(np.isfinite(keypoints)):
            raise ValueError("keypoints must be finite")
        if not np.all((labels == 0) | (labels == 1)):
            raise ValueError("labels must be binary")
        for c in clouds:
            if c.ndim != 2 or c.shape[1] != 3 or c.shape[0] == 0:
                raise ValueError("each cloud must be a non-empty (M, 3) array")
        keypoints.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "clouds", clouds)
        object.__setattr__(self, "keypoints", keypoints)
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return len(self.clouds)

    @property
    def positive_count(self) -> int:
        return int(self.labels.sum())

    @property
    def negative_count(self) -> int:
        return len(self) - self.positive_count

    def subset(self, indices: list[int] | NDArray[np.intp]) -> TrainBatch:
        idx = [int(i) for i in indices]
        return TrainBatch(
            tuple(self.clouds[i] for i in idx), self.keypoints[idx], self.labels[idx]
        )

    def positives(self) -> TrainBatch:
        return self.subset(np.flatnonzero(self.labels == 1))


@dataclass(frozen=True)
class Hyper:
    """Training hyperparameters."""

    learning_rate: float = 1e-3
    batch_size: int = 64
    iterations: int = 5000
    latent_dim: int = 4
    kl_weight: float = 0.1
    seed: int = 0
    train_points: int = 256

    def __post_init__(self) -> None:
        if not self.learning_rate > 0.0:
            raise ValueError("learning_rate must be positive")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.iterations < 0:
            raise ValueError("iterations must be >= 0")
        if self.latent_dim < 1:
            raise ValueError("latent_dim must be >= 1")
        if self.kl_weight < 0.0:
            raise ValueError("kl_weight must be non-negative")
        if self.train_points < 1:
            raise ValueError("train_points must be >= 1")
