"""Normalization of two-interval problems and their elliptic uniformization."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import GeometryError, OriginInsideError, PoleError, RegionError
from .special import Modulus, inverse_sn_squared, jacobi_sn_cn_dn, modulus_build

BOUNDARY_TOL = 1e-14
MIN_GAP = 1e-12


class Region(str, enum.Enum):
    GAP = "gap"
    OUTSIDE = "outside"
    # evaluation point on an endpoint; only the limit value kappa = 1 is defined
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class IntervalPair:
    """E = [a1, a2] U [a3, a4] with a1 < a2 < a3 < a4."""

    a1: float
    a2: float
    a3: float
    a4: float

    def __post_init__(self):
        pts = (self.a1, self.a2, self.a3, self.a4)
        if not all(math.isfinite(x) for x in pts):
            raise GeometryError("endpoints must be finite")
        if not (self.a1 < self.a2 < self.a3 < self.a4):
            raise GeometryError(f"endpoints must satisfy a1 < a2 < a3 < a4, got {pts}")

    def contains(self, x: float) -> bool:
        return self.a1 <= x <= self.a2 or self.a3 <= x <= self.a4

    @property
    def width(self) -> float:
        return self.a4 - self.a1

    def to_unit(self, x: float) -> float:
        """The affine map sending [a1, a4] onto [-1, 1]."""
        return (2.0 * x - self.a1 - self.a4) / (self.a4 - self.a1)

    def scaled(self, t: float) -> IntervalPair:
        return IntervalPair(t * self.a1, t * self.a2, t * self.a3, t * self.a4)


def check_normalized_pair(alpha: float, beta: float) -> None:
    if not (math.isfinite(alpha) and math.isfinite(beta)):
        raise GeometryError("alpha and beta must be finite")
    if not (-1.0 < alpha < beta < 1.0):
        raise GeometryError(f"need -1 < alpha < beta < 1, got alpha={alpha}, beta={beta}")
    if beta - alpha < MIN_GAP:
        raise GeometryError("gap between the intervals is degenerate")


def classify(alpha: float, beta: float, xi: float) -> Region:
    if not math.isfinite(xi):
        raise GeometryError("xi must be finite")
    if min(abs(xi - e) for e in (-1.0, alpha, beta, 1.0)) <= BOUNDARY_TOL:
        return Region.BOUNDARY
    if alpha < xi < beta:
        return Region.GAP
    if xi < -1.0 or xi > 1.0:
        return Region.OUTSIDE
    raise OriginInsideError(f"xi={xi} lies in [-1, {alpha}] U [{beta}, 1]")


@dataclass(frozen=True)
class NormalizedProblem:
    """The set [-1, alpha] U [beta, 1] with evaluation point xi."""

    alpha: float
    beta: float
    xi: float
    region: Region = field(init=False)

    def __post_init__(self):
        check_normalized_pair(self.alpha, self.beta)
        object.__setattr__(self, "region", classify(self.alpha, self.beta, self.xi))


@dataclass(frozen=True)
class Uniformization:
    m: Modulus
    rho: float
    alpha: float
    beta: float


def normalize(e: IntervalPair) -> NormalizedProblem:
    """Map E affinely onto [-1, alpha] U [beta, 1]; the origin goes to xi."""
    if e.contains(0.0):
        raise OriginInsideError("the origin lies in E")
    return NormalizedProblem(e.to_unit(e.a2), e.to_unit(e.a3), e.to_unit(0.0))


def uniformize_pair(alpha: float, beta: float) -> Uniformization:
    check_normalized_pair(alpha, beta)
    den = (1.0 - alpha) * (1.0 + beta)
    k = math.sqrt(2.0 * (beta - alpha) / den)
    k_prime = math.sqrt((1.0 + alpha) * (1.0 - beta) / den)
    m = modulus_build(k, k_prime)
    rho = inverse_sn_squared(0.5 * (1.0 - alpha), 0.5 * (1.0 + alpha), (1.0 + alpha) / (1.0 + beta))
    return Uniformization(m, rho, alpha, beta)


def uniformize(p: NormalizedProblem) -> Uniformization:
    """Modulus k and the point rho in (0, K) with sn^2(rho) = (1 - alpha)/2."""
    return uniformize_pair(p.alpha, p.beta)


def v_star_squares(p: NormalizedProblem) -> tuple[float, float, float]:
    """sn^2, cn^2, dn^2 at v*, where u* = v* + iK' for a gap point."""
    if p.region is not Region.GAP:
        raise RegionError("v* is defined only for xi in the gap")
    a, b, x = p.alpha, p.beta, p.xi
    sn2 = (x - a) * (1.0 + b) / ((1.0 + x) * (b - a))
    cn2 = (b - x) * (1.0 + a) / ((1.0 + x) * (b - a))
    dn2 = (1.0 - x) * (1.0 + a) / ((1.0 + x) * (1.0 - a))
    return sn2, cn2, dn2


def u_star_squares(p: NormalizedProblem) -> tuple[float, float, float]:
    """sn^2, cn^2, dn^2 at the real preimage u* of an outside point."""
    if p.region is not Region.OUTSIDE:
        raise RegionError("u* is real only for xi outside [-1, 1]")
    a, b, x = p.alpha, p.beta, p.xi
    sn2 = (1.0 + x) * (1.0 - a) / (2.0 * (x - a))
    cn2 = (x - 1.0) * (1.0 + a) / (2.0 * (x - a))
    dn2 = (x - b) * (1.0 + a) / ((1.0 + b) * (x - a))
    return sn2, cn2, dn2


def v_star(p: NormalizedProblem, u: Uniformization | None = None) -> float:
    return inverse_sn_squared(*v_star_squares(p))


def u_star(p: NormalizedProblem, u: Uniformization | None = None) -> float:
    return inverse_sn_squared(*u_star_squares(p))


def phi(u_val: float, p: NormalizedProblem, u: Uniformization) -> float:
    """The map phi restricted to real arguments, phi(0) = -1, phi(K) = 1."""
    sn = jacobi_sn_cn_dn(u_val, u.m).sn
    den = 2.0 * sn * sn + p.alpha - 1.0
    if abs(den) <= 4.0 * 2.0**-52:
        raise PoleError("phi has a pole at u = rho")
    return p.alpha + (1.0 - p.alpha * p.alpha) / den
