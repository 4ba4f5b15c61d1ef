from __future__ import annotations

from typing import Optional


class PcoordsError(Exception):
    """Base class for every error raised by pcoords_quadrics."""


class UsageError(PcoordsError, ValueError):
    """An operation was called with arguments violating its preconditions."""


class IndivisibleError(PcoordsError):
    """Exact polynomial division left a nonzero remainder."""


class SurfaceParseError(PcoordsError):
    """
    The equation text could not be turned into a polynomial surface.

    Args:
        message: Human readable description
        position: Character offset in the input, when known
    """

    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnsupportedDegreeError(SurfaceParseError):
    pass


class NonPolynomialError(SurfaceParseError):
    pass


class UnknownVariableError(SurfaceParseError):
    pass


class SingularPointError(PcoordsError):
    """The surface gradient vanishes at the requested point."""


class OffSurfaceError(PcoordsError):
    """The requested point does not satisfy F = 0 within tolerance."""


class BoundaryError(PcoordsError):
    """A declared degenerate case of the boundary elimination."""


class DegenerateSystemError(BoundaryError):
    pass


class DegenerateContactError(BoundaryError):
    pass


class DegenerateBoundaryError(BoundaryError):
    pass


class CleanupError(BoundaryError):
    pass
