"""Test suite for Keypoint Lab."""
