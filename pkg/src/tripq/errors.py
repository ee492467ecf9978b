"""Exception types shared across the package.

Every domain error carries a stable ``code`` string that the CLI prints on
stderr before exiting with status 3.
"""
from __future__ import annotations


class TripError(Exception):
    """Base class for all domain errors raised by tripq."""

    code = "E_DOMAIN"


class ZeroFirstCoordinate(TripError):
    code = "E_ZERO_FIRST_COORDINATE"


class SingularMatrix(TripError):
    code = "E_SINGULAR_MATRIX"


class OutsideDomain(TripError):
    code = "E_OUTSIDE_DOMAIN"


class BoundaryPoint(TripError):
    code = "E_BOUNDARY_POINT"

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class NoCylinder(TripError):
    code = "E_NO_CYLINDER"

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class NonConvergent(TripError):
    """A periodic itinerary whose nested cells do not shrink to a point.

    ``segment`` holds the two endpoints of the limiting segment and
    ``result`` the full periodic-limit record.
    """

    code = "E_NON_CONVERGENT"

    def __init__(self, message: str, segment=None, result=None):
        super().__init__(message)
        self.segment = segment
        self.result = result


class DegenerateProjection(TripError):
    code = "E_DEGENERATE_PROJECTION"


class OutOfRange(TripError):
    code = "E_OUT_OF_RANGE"


class InconsistentVertexMap(TripError):
    code = "E_INCONSISTENT_VERTEX_MAP"


class NotDegenerate(TripError):
    code = "E_NOT_DEGENERATE"


class ClassificationMismatch(TripError):
    code = "E_CLASSIFICATION_MISMATCH"


class UnsupportedTriple(TripError):
    code = "E_UNSUPPORTED_TRIPLE"


class PreconditionViolated(TripError):
    code = "E_PRECONDITION"


class DepthCapExceeded(TripError):
    code = "E_DEPTH_CAP"


class ParseError(ValueError):
    """Malformed textual input (triple names, rationals, points)."""

    code = "E_PARSE"
