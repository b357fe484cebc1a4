"""Force specification and the linear term of the action objective."""

from __future__ import annotations

import math

import numpy as np

from ...value_objects.geometry import FloatArray
from ...value_objects.keypoints import ToolKeypoints
from ...value_objects.qp import ForceSpec
from ...value_objects.task import EnvKeypoints


def tool_angle(k: ToolKeypoints) -> float:
    """Signed CCW angle from x_g - x_f to the effect direction e."""
    d = k.x_g - k.x_f
    e = k.effect_direction
    cross = d[0] * e[1] - d[1] * e[0]
    return math.atan2(float(cross), float(d @ e))


def force_spec(k: ToolKeypoints, env: EnvKeypoints) -> ForceSpec:
    """(alpha, beta) = x_r - x_t with gamma measured on the observed keypoints."""
    alpha, beta = env.force
    return ForceSpec(alpha, beta, tool_angle(k))


def compute_v(spec: ForceSpec, printed: bool = False) -> FloatArray:
    """Coefficients v with v . z = force . R(gamma)(x_g - x_f).

    ``printed=True`` returns the variant whose second and fourth entries use
    beta in place of alpha. It does not satisfy the rotation identity and is
    kept only for A/B runs.
    """
    a, b = spec.alpha, spec.beta
    c, s = math.cos(spec.gamma), math.sin(spec.gamma)
    if printed:
        return np.array([a * c + b * s, -b * s + b * c, -a * c - b * s, b * s - b * c])
    return np.array([a * c + b * s, -a * s + b * c, -a * c - b * s, a * s - b * c])
