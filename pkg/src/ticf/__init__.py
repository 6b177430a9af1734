"""Asymptotic convergence factor and logarithmic capacity of two real intervals."""

from .capacity import CapacityEstimate, cap_exact, cap_general, cap_lower, cap_normalized, cap_upper
from .errors import (
    AccuracyError,
    ConvergenceError,
    DomainError,
    FitError,
    GeometryError,
    OriginInsideError,
    PoleError,
    RegionError,
    SolverError,
    TicfError,
)
from .factor import FactorEstimate, kappa_bounds, kappa_exact, kappa_general, reflect, xi_optimal
from .geometry import IntervalPair, NormalizedProblem, Region, normalize, uniformize, uniformize_pair

__version__ = "0.1.0"
