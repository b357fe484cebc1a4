"""Tool creation: arrange parts by gradient ascent on the evaluation score."""

from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np

from ..value_objects.creation import CreationOptions, CreationResult, PartPose
from ..value_objects.geometry import FloatArray, PlanarPose, PointCloud
from ..value_objects.keypoints import ToolKeypoints
from ..value_objects.learning import NetParams
from .exceptions import BadPartsError, DivergedError
from .geometry import transform_cloud
from .learner.networks import score_gradient

# d/dphi of R(phi) v is J R(phi) v.
_J = np.array([[0.0, -1.0], [1.0, 0.0]])


def _check_parts(parts: Sequence[PointCloud], poses: Sequence[PartPose]) -> None:
    if len(parts) != len(poses):
        raise BadPartsError(f"{len(parts)} parts but {len(poses)} poses")
    if not parts:
        raise BadPartsError("at least one part is required")
    if any(part.count == 0 for part in parts):
        raise BadPartsError("parts must be non-empty clouds")


def assemble(parts: Sequence[PointCloud], poses: Sequence[PartPose]) -> PointCloud:
    """Move each part rigidly about its own centroid and concatenate.

    Raises:
        BadPartsError: If the lists differ in length, are empty or hold an empty part
    """
    _check_parts(parts, poses)
    moved = [
        transform_cloud(part, PlanarPose(pose.tx, pose.ty, pose.phi), part.centroid_xy())
        for part, pose in zip(parts, poses, strict=True)
    ]
    return PointCloud(np.vstack([c.points for c in moved]))


def _score_and_gradient(
    parts: Sequence[PointCloud],
    poses: Sequence[PartPose],
    k: ToolKeypoints,
    params: NetParams,
) -> tuple[float, FloatArray, PointCloud]:
    cloud = assemble(parts, poses)
    score, grad_points = score_gradient(cloud.points, k, params)
    grad = np.zeros((len(parts), 3))
    start = 0
    for j, (part, pose) in enumerate(zip(parts, poses, strict=True)):
        stop = start + part.count
        g = grad_points[start:stop, :2]
        moved_center = part.centroid_xy() + np.array([pose.tx, pose.ty])
        offsets = cloud.xy[start:stop] - moved_center
        grad[j, :2] = g.sum(axis=0)
        grad[j, 2] = float(np.sum(g * (offsets @ _J.T)))
        start = stop
    return score, grad, cloud


def creation_gradient(
    parts: Sequence[PointCloud],
    poses: Sequence[PartPose],
    k: ToolKeypoints,
    params: NetParams,
) -> FloatArray:
    """Gradient of the score w.r.t. every (t_x, t_y, phi), shape (parts, 3).

    Raises:
        BadPartsError: If parts and poses do not line up
        BadParamsError: If ``params`` is not an evaluation head
    """
    _, grad, _ = _score_and_gradient(parts, poses, k, params)
    return grad


def _stepped(poses: Sequence[PartPose], direction: FloatArray, step: float) -> tuple[PartPose, ...]:
    return tuple(
        PartPose.from_array(pose.as_array() + step * direction[j]) for j, pose in enumerate(poses)
    )


def create_tool(
    parts: Sequence[PointCloud],
    k: ToolKeypoints,
    params: NetParams,
    opts: CreationOptions | None = None,
    initial_poses: Sequence[PartPose] | None = None,
) -> CreationResult:
    """Steepest ascent on the evaluation score with backtracking.

    Each iteration moves a distance ``step`` along the unit gradient in pose
    space and halves the distance until the score strictly increases. The
    run stops when the gradient norm drops to ``tol`` (converged), after
    ``max_iters`` iterations, or when no halving improves the score.

    Raises:
        BadPartsError: If ``parts`` is empty
        DivergedError: If the score becomes NaN
    """
    opts = opts or CreationOptions()
    poses = tuple(initial_poses) if initial_poses is not None else tuple(PartPose() for _ in parts)
    score, grad, cloud = _score_and_gradient(parts, poses, k, params)
    if math.isnan(score):
        raise DivergedError("initial score is NaN")

    scores = [score]
    history: list[tuple[PartPose, ...]] = []
    grad_norm = float(np.linalg.norm(grad))
    for _ in range(opts.max_iters):
        if grad_norm <= opts.tol:
            break
        direction = grad / grad_norm
        step = opts.step
        accepted = False
        for _ in range(opts.max_halvings + 1):
            candidate = _stepped(poses, direction, step)
            new_score, new_grad, new_cloud = _score_and_gradient(parts, candidate, k, params)
            if math.isnan(new_score):
                raise DivergedError(f"score became NaN at step length {step}")
            if new_score > score:
                poses, score, grad, cloud = candidate, new_score, new_grad, new_cloud
                grad_norm = float(np.linalg.norm(grad))
                scores.append(score)
                history.append(poses)
                accepted = True
                break
            step *= 0.5
        if not accepted:
            break

    return CreationResult(
        poses=poses,
        scores=tuple(scores),
        cloud=cloud,
        converged=grad_norm <= opts.tol,
        gradient_norm=grad_norm,
        pose_history=tuple(history),
    )
