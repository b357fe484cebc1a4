"""Assembly of the action quadratic program from keypoints."""

from __future__ import annotations

import numpy as np

from ...value_objects.keypoints import ToolKeypoints
from ...value_objects.qp import QPProblem
from ...value_objects.task import Box2, EnvKeypoints
from ..exceptions import InfeasibleConstraintsError
from .force import compute_v, force_spec

FUNCTION_HALF_WIDTH = 0.1

ACTION_Q = np.array(
    [
        [1.0, 0.0, -1.0, 0.0],
        [0.0, 1.0, 0.0, -1.0],
        [-1.0, 0.0, 2.0, 0.0],
        [0.0, -1.0, 0.0, 2.0],
    ]
)


def box_rows(lower: np.ndarray, upper: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """H and eps for lower <= z <= upper; row 2i bounds z_i below, row 2i+1 above."""
    n = len(lower)
    H = np.zeros((2 * n, n))
    eps = np.zeros(2 * n)
    for i in range(n):
        H[2 * i, i] = 1.0
        H[2 * i + 1, i] = -1.0
        eps[2 * i] = lower[i]
        eps[2 * i + 1] = -upper[i]
    return H, eps


def build_qp(
    k: ToolKeypoints,
    env: EnvKeypoints,
    workspace: Box2,
    printed_v: bool = False,
    function_half_width: float = FUNCTION_HALF_WIDTH,
) -> QPProblem:
    """Quadratic program trading x_f near x_t against alignment with the force.

    z^T Q z + b^T z + |x_t|^2 = |x_f - x_t|^2 + |x_f - x_g|^2 - v . z.
    The grasp point is boxed to the workspace and the function point to the
    square of half-width ``function_half_width`` around x_t, clipped to the
    workspace.

    Raises:
        InfeasibleConstraintsError: If the function-point box misses the workspace
    """
    xt, yt = env.target
    v = compute_v(force_spec(k, env), printed=printed_v)
    b = -v + np.array([0.0, 0.0, -2.0 * xt, -2.0 * yt])

    fx_lo = max(xt - function_half_width, workspace.xmin)
    fx_hi = min(xt + function_half_width, workspace.xmax)
    fy_lo = max(yt - function_half_width, workspace.ymin)
    fy_hi = min(yt + function_half_width, workspace.ymax)
    if fx_lo > fx_hi or fy_lo > fy_hi:
        raise InfeasibleConstraintsError(
            f"function-point box around target {env.target} misses the workspace"
        )
    lower = np.array([workspace.xmin, workspace.ymin, fx_lo, fy_lo])
    upper = np.array([workspace.xmax, workspace.ymax, fx_hi, fy_hi])
    H, eps = box_rows(lower, upper)
    return QPProblem(ACTION_Q, b, H, eps)
