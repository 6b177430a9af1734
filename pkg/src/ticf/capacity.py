"""Logarithmic capacity of [-1, alpha] U [beta, 1] and of raw interval pairs."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import GeometryError
from .geometry import IntervalPair, check_normalized_pair, uniformize_pair
from .special import theta_Theta


@dataclass(frozen=True)
class CapacityEstimate:
    lower: float
    exact: float
    upper: float
    scale: float = 1.0


def cap_exact(alpha: float, beta: float) -> float:
    unif = uniformize_pair(alpha, beta)
    ratio = theta_Theta(0.0, unif.m) / theta_Theta(unif.rho, unif.m)
    return (1.0 + beta) / (2.0 * (1.0 + alpha)) * ratio**4


def cap_lower(alpha: float, beta: float) -> float:
    """Elementary lower bound; alpha == beta is allowed and gives 1/2."""
    if not (math.isfinite(alpha) and math.isfinite(beta) and -1.0 < alpha <= beta < 1.0):
        raise GeometryError(f"need -1 < alpha <= beta < 1, got alpha={alpha}, beta={beta}")
    num = (1.0 - alpha * alpha) ** 0.25 + (1.0 - beta * beta) ** 0.25
    den = ((1.0 - alpha) * (1.0 + beta)) ** 0.25 + ((1.0 + alpha) * (1.0 - beta)) ** 0.25
    return 0.5 * (num / den) ** 4


def cap_upper(alpha: float, beta: float) -> float:
    """Dubinin-Karp upper bound."""
    check_normalized_pair(alpha, beta)
    return 0.25 * (math.sqrt((1.0 + alpha) * (1.0 + beta)) + math.sqrt((1.0 - alpha) * (1.0 - beta)))


def cap_normalized(alpha: float, beta: float) -> CapacityEstimate:
    return CapacityEstimate(cap_lower(alpha, beta), cap_exact(alpha, beta), cap_upper(alpha, beta))


def cap_general(e: IntervalPair) -> CapacityEstimate:
    """Capacity of E = [a1, a2] U [a3, a4]; the origin may lie anywhere."""
    scale = 0.5 * e.width
    est = cap_normalized(e.to_unit(e.a2), e.to_unit(e.a3))
    return CapacityEstimate(scale * est.lower, scale * est.exact, scale * est.upper, scale)
