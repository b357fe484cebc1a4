"""Core business logic for Keypoint Lab."""
