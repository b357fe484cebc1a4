"""Keypoint Lab - keypoint-based tool manipulation research bench."""

__version__ = "0.1.0"
