"""Exception types shared across the library."""


class DimensionError(ValueError):
    """Operands have incompatible dimensions."""


class CapacityError(RuntimeError):
    """An enumeration would exceed the configured cap."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class ModelError(ValueError):
    """A model document or expression failed to parse or validate."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class SearchFailure(RuntimeError):
    """No key candidate survived the final consistency check."""
