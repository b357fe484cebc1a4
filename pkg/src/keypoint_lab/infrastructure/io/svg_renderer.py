"""Top-down SVG overlays of tool clouds and keypoints."""

from __future__ import annotations

import io
from collections.abc import Sequence
from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")

from matplotlib import rc_context  # noqa: E402
from matplotlib.axes import Axes  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402

from ...core.application.services.exceptions import ArtifactIOError  # noqa: E402
from ...core.domain.services.creator import assemble  # noqa: E402
from ...core.domain.value_objects.creation import CreationResult, PartPose  # noqa: E402
from ...core.domain.value_objects.geometry import PointCloud  # noqa: E402
from ...core.domain.value_objects.keypoints import ToolKeypoints  # noqa: E402
from ...core.domain.value_objects.task import EnvKeypoints  # noqa: E402

VIEW_MARGIN = 0.02
ARROW_LENGTH = 0.05
HASH_SALT = "keypoint-lab"
SVG_RC = {"svg.hashsalt": HASH_SALT, "svg.fonttype": "path", "path.simplify": False}

# (label, marker, color) for grasp, function and effect points
GLYPHS = (
    ("grasp", "o", "tab:blue"),
    ("function", "s", "tab:red"),
    ("effect", "^", "tab:green"),
)


def compute_view_bounds(
    xy: np.ndarray,
    keypoints: ToolKeypoints | None = None,
    env: EnvKeypoints | None = None,
    margin: float = VIEW_MARGIN,
) -> tuple[float, float, float, float]:
    """(xmin, xmax, ymin, ymax) containing the cloud, keypoints and target arrow."""
    points = [np.asarray(xy, dtype=np.float64).reshape(-1, 2)]
    if keypoints is not None:
        points.append(np.vstack([keypoints.x_g, keypoints.x_f, keypoints.x_e]))
    if env is not None:
        target = np.asarray(env.target)
        points.append(np.vstack([target, target + ARROW_LENGTH * env.direction]))
    stacked = np.vstack(points)
    if stacked.size == 0:
        return (-margin, margin, -margin, margin)
    low = stacked.min(axis=0) - margin
    high = stacked.max(axis=0) + margin
    return (float(low[0]), float(high[0]), float(low[1]), float(high[1]))


def _draw(
    ax: Axes,
    xy: np.ndarray,
    keypoints: ToolKeypoints | None,
    env: EnvKeypoints | None,
    bounds: tuple[float, float, float, float],
) -> None:
    ax.scatter(xy[:, 0], xy[:, 1], s=2, c="0.45", linewidths=0)
    if keypoints is not None:
        for (label, marker, color), point in zip(
            GLYPHS, (keypoints.x_g, keypoints.x_f, keypoints.x_e), strict=True
        ):
            ax.scatter([point[0]], [point[1]], s=60, marker=marker, c=color, label=label, zorder=3)
    if env is not None:
        tx, ty = env.target
        dx, dy = ARROW_LENGTH * env.direction
        ax.annotate(
            "",
            xy=(tx + dx, ty + dy),
            xytext=(tx, ty),
            arrowprops={"arrowstyle": "->", "color": "black", "lw": 1.5},
        )
        ax.scatter([tx], [ty], s=30, marker="x", c="black", label="target", zorder=3)
    ax.set_xlim(bounds[0], bounds[1])
    ax.set_ylim(bounds[2], bounds[3])
    ax.set_aspect("equal", adjustable="box")
    ax.set_xlabel("x [m]")
    ax.set_ylabel("y [m]")
    if keypoints is not None or env is not None:
        ax.legend(loc="upper right", fontsize="small")


def _to_svg(fig: Figure) -> bytes:
    buffer = io.BytesIO()
    with rc_context(SVG_RC):
        fig.savefig(buffer, format="svg", metadata={"Date": None})
    return buffer.getvalue()


class SvgRenderer:
    """Renders clouds with keypoint glyphs to byte-stable SVG."""

    def __init__(self, size_inches: float = 4.0) -> None:
        self._size = size_inches

    def render_keypoints(
        self,
        cloud: PointCloud,
        keypoints: ToolKeypoints | None = None,
        env: EnvKeypoints | None = None,
        title: str | None = None,
    ) -> bytes:
        """Cloud scatter with grasp/function/effect markers and the force arrow.

        The view is expanded so every marker and the arrow lie inside it.
        """
        bounds = compute_view_bounds(cloud.xy, keypoints, env)
        with rc_context(SVG_RC):
            fig = Figure(figsize=(self._size, self._size))
            ax = fig.add_subplot()
            _draw(ax, cloud.xy, keypoints, env, bounds)
            if title:
                ax.set_title(title)
            return _to_svg(fig)

    def render_creation_frames(
        self,
        part_clouds: Sequence[PointCloud],
        result: CreationResult,
        keypoints: ToolKeypoints,
    ) -> list[bytes]:
        """One frame per creation state: the start poses then each accepted step.

        All frames share the view bounds of the whole trajectory.
        """
        start = tuple(PartPose() for _ in part_clouds)
        states = [start, *result.pose_history]
        clouds = [assemble(part_clouds, poses) for poses in states]
        everything = np.vstack([c.xy for c in clouds])
        bounds = compute_view_bounds(everything, keypoints)
        frames = []
        for index, (cloud, score) in enumerate(zip(clouds, result.scores, strict=False)):
            with rc_context(SVG_RC):
                fig = Figure(figsize=(self._size, self._size))
                ax = fig.add_subplot()
                _draw(ax, cloud.xy, keypoints, None, bounds)
                ax.set_title(f"step {index}  score {score:.3f}")
                frames.append(_to_svg(fig))
        return frames

    @staticmethod
    def write(path: Path, svg: bytes) -> None:
        """Write rendered bytes.

        Raises:
            ArtifactIOError: If the file cannot be written
        """
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_bytes(svg)
        except OSError as e:
            raise ArtifactIOError(f"Failed to write {path}: {e}", e) from e
