"""Exception types shared across the package."""


class ScorepowerError(Exception):
    """Base class for all errors raised by this package."""

    category = "error"


class ParseError(ScorepowerError):
    """Malformed textual input (weights, rationals, rankings)."""

    category = "parse"

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class ShapeError(ScorepowerError):
    """Dimension mismatch between a committee and its inputs."""

    category = "shape"


class SizeLimitError(ScorepowerError):
    """A tabulating operation would exceed the configured cap."""

    category = "size-limit"


class ContractViolationError(ScorepowerError):
    """An operation was called outside its stated precondition."""

    category = "contract"


class SearchBoundError(ScorepowerError):
    """A bounded search ended without finding a result."""

    category = "search-bound"


class CacheError(ScorepowerError):
    """A cache entry failed its integrity check."""

    category = "cache"
