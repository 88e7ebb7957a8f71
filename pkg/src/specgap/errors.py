"""Exception types shared across the library."""


class SpecgapError(Exception):
    """Base class for library errors."""


class EigensolverError(SpecgapError):
    """Eigensolver failed to converge.

    Carries the 1-based index of the offending eigenvalue as reported by
    the underlying LAPACK routine, when available.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class GridError(SpecgapError):
    """Domain/grid incompatibility (resolution too coarse, mesh not dividing
    the cell scale, mismatched shapes)."""


class ConfigError(SpecgapError):
    """Malformed or incomplete scenario configuration."""
