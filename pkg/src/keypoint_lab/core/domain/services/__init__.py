"""Pure numeric domain services."""
