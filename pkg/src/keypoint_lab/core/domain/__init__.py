"""Domain layer: value objects, numeric services and repository contracts."""
