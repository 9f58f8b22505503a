"""Exception types shared across the package."""


class HopfColorError(Exception):
    """Base class for all package-specific errors."""


class InvalidInputError(HopfColorError):
    """An operation was called with arguments outside its contract."""


class ValidationError(HopfColorError):
    """Raw input data does not describe a valid structure.

    The ``code`` attribute distinguishes failure modes, e.g. ``"self-loop"``,
    ``"duplicate-edge"``, ``"directed-cycle"``, ``"unknown-vertex"``,
    ``"order-cycle"``.
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class ResourceLimitError(HopfColorError):
    """An enumeration or construction exceeded a configured resource guard."""


class InternalConsistencyError(HopfColorError):
    """Two independent computations of the same quantity disagreed."""
