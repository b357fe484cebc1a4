"""Infrastructure unit tests."""
