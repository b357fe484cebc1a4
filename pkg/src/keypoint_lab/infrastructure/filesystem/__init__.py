"""File-backed implementations of the repository interfaces."""
