"""Keypoint producers and the keypoint invariant gate."""

from .heuristic import heuristic_keypoints
from .template import (
    TemplateEntry,
    TemplateMatch,
    match_template,
    template_keypoints,
    transfer_keypoints,
)
from .validation import MIN_SEPARATION, SNAP_RADIUS, snap_keypoints, validate_keypoints

__all__ = [
    "MIN_SEPARATION",
    "SNAP_RADIUS",
    "TemplateEntry",
    "TemplateMatch",
    "heuristic_keypoints",
    "match_template",
    "snap_keypoints",
    "template_keypoints",
    "transfer_keypoints",
    "validate_keypoints",
]
