"""Error types shared across the toolkit.

Each error carries a short ``code`` that the command line reports verbatim.
"""

from .polyrat.fme import DimensionCapError


class SupdiffError(Exception):
    code = "ERROR"


class ImproperFunctionError(SupdiffError):
    code = "IMPROPER"


class UnsupportedFamilyError(SupdiffError):
    code = "UNSUPPORTED_FAMILY"


class PreconditionError(SupdiffError):
    code = "PRECONDITION"


class ContinuityPreconditionError(PreconditionError):
    code = "PRECONDITION_CONTINUITY"


class NotEpsSubgradientError(SupdiffError):
    code = "NOT_EPS_SUBGRADIENT"


class NoSqrtError(SupdiffError):
    code = "NO_SQRT"


class ParseError(SupdiffError):
    code = "PARSE_ERROR"


DimensionCapError.code = "DIMENSION_CAP"

__all__ = [
    "SupdiffError",
    "ImproperFunctionError",
    "UnsupportedFamilyError",
    "PreconditionError",
    "ContinuityPreconditionError",
    "NotEpsSubgradientError",
    "NoSqrtError",
    "ParseError",
    "DimensionCapError",
]
