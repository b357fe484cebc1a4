"""Acceptance tests driving the CLI end to end."""
