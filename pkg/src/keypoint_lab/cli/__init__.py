"""Command line interface for Keypoint Lab."""
