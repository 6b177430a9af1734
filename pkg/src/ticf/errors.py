"""Exception hierarchy.

Every error carries a short machine-readable ``code`` which the command line
prints on stderr.
"""


class TicfError(Exception):
    code = "ERROR"


class DomainError(TicfError, ValueError):
    """An argument lies outside the domain of a function."""

    code = "DOMAIN"


class AccuracyError(TicfError, ArithmeticError):
    """The requested evaluation cannot be carried out to double accuracy."""

    code = "ACCURACY"


class GeometryError(TicfError, ValueError):
    """Interval endpoints are not strictly ordered (or degenerate)."""

    code = "GEOMETRY"


class OriginInsideError(TicfError, ValueError):
    """The evaluation point lies in the set E."""

    code = "POINT_INSIDE"


class RegionError(TicfError, ValueError):
    code = "REGION"


class PoleError(TicfError, ZeroDivisionError):
    code = "POLE"


class ConvergenceError(TicfError, ArithmeticError):
    code = "CONVERGENCE"


class SolverError(TicfError, RuntimeError):
    code = "SOLVER"


class FitError(TicfError, ValueError):
    code = "FIT"
