"""Asymptotic convergence factor of two intervals and its elementary bounds.

``kappa_exact`` evaluates the theta-function representation using real
arguments only: for a gap point the preimage is ``v* + iK'`` and the H-ratio
collapses to a Theta-ratio at ``v*``; for an outside point the preimage is
real and H = sqrt(k) sn Theta splits into an sn-ratio (closed form) and a
Theta-ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import AccuracyError, RegionError
from .geometry import (
    IntervalPair,
    NormalizedProblem,
    Region,
    Uniformization,
    check_normalized_pair,
    normalize,
    u_star,
    uniformize,
    uniformize_pair,
    v_star,
)
from .special import jacobi_sn_cn_dn, jacobi_zn, theta_Theta

SANDWICH_SLACK = 1e-12


@dataclass(frozen=True)
class FactorEstimate:
    lower: float
    exact: float
    upper: float
    A1: float
    A2: float
    B: float


def envelope_A(alpha: float, beta: float) -> tuple[float, float]:
    """The constants A1 >= A2 > 0 whose ratio bounds the theta factor."""
    check_normalized_pair(alpha, beta)
    p = (1.0 - alpha) * (1.0 + beta)
    r = (1.0 + alpha) * (1.0 - beta)
    A1 = p**0.25 + r**0.25
    A2 = 8.0**0.25 * (math.sqrt(p) + math.sqrt(r)) ** 0.25 * ((1.0 - alpha**2) * (1.0 - beta**2)) ** 0.0625
    return A1, A2


def b_gap(p: NormalizedProblem) -> float:
    if p.region is not Region.GAP:
        raise RegionError("b_gap needs alpha < xi < beta")
    a, b, x = p.alpha, p.beta, p.xi
    Q = ((1.0 - a * a) * (1.0 - b * b)) ** 0.25
    s = math.sqrt((1.0 - x) * (1.0 + x))
    r = math.sqrt((x - a) * (b - x))
    return (Q + s - r) / (Q + s + r)


def _sn_ratio_outside(a: float, b: float, x: float) -> float:
    """|sn(u* - rho) / sn(u* + rho)| in closed form."""
    s = math.sqrt((1.0 + x) * (x - a))
    t = math.sqrt((x - 1.0) * (x - b))
    return abs(s - t) / (s + t)


def b_outside(p: NormalizedProblem) -> float:
    if p.region is not Region.OUTSIDE:
        raise RegionError("b_outside needs |xi| > 1")
    a, b, x = p.alpha, p.beta, p.xi
    c = ((1.0 + a) * (1.0 - b) / ((1.0 - a) * (1.0 + b))) ** 0.25
    # the linear factor is negative for xi < -1; only its magnitude enters
    lin = abs(2.0 * x - x * a + x * b - a - b) * c
    r = 2.0 * math.sqrt((x - a) * (x - b))
    s = (b - a) * math.sqrt((x - 1.0) * (x + 1.0))
    return (lin + r - s) / (lin + r + s) * _sn_ratio_outside(a, b, x)


def b_elliptic(p: NormalizedProblem, unif: Uniformization | None = None) -> float:
    """B evaluated through sn, cn, dn at the preimage and at rho.

    Uses the addition-theorem expansion of
    ``(sqrt(k') + dn(u + rho)) / (sqrt(k') + dn(u - rho))``, times
    ``|sn(u - rho) / sn(u + rho)|`` for outside points.
    """
    unif = unif or uniformize(p)
    m = unif.m
    if p.region is Region.GAP:
        u = v_star(p)
    elif p.region is Region.OUTSIDE:
        u = u_star(p)
    else:
        raise RegionError("B is undefined on the boundary")
    s, c, d = jacobi_sn_cn_dn(u, m)
    S, C, D = jacobi_sn_cn_dn(unif.rho, m)
    k2 = m.k * m.k
    skp = math.sqrt(m.k_prime)
    base = skp * (1.0 - k2 * s * s * S * S) + d * D
    cross = k2 * s * S * c * C
    value = (base - cross) / (base + cross)
    if p.region is Region.OUTSIDE:
        value *= abs((s * C * D - S * c * d) / (s * C * D + S * c * d))
    return value


def kappa_exact(p: NormalizedProblem, unif: Uniformization | None = None) -> float:
    """kappa([-1, alpha] U [beta, 1], xi) from Jacobi theta functions."""
    if p.region is Region.BOUNDARY:
        return 1.0
    unif = unif or uniformize(p)
    m, rho = unif.m, unif.rho
    if p.region is Region.GAP:
        v = v_star(p)
        return theta_Theta(v - rho, m) / theta_Theta(v + rho, m)
    u = u_star(p)
    ratio = theta_Theta(u - rho, m) / theta_Theta(u + rho, m)
    return _sn_ratio_outside(p.alpha, p.beta, p.xi) * ratio


def kappa_bounds(p: NormalizedProblem, unif: Uniformization | None = None) -> FactorEstimate:
    A1, A2 = envelope_A(p.alpha, p.beta)
    if p.region is Region.BOUNDARY:
        return FactorEstimate(1.0, 1.0, 1.0, A1, A2, 1.0)
    B = b_gap(p) if p.region is Region.GAP else b_outside(p)
    exact = kappa_exact(p, unif)
    lower = A2 / A1 * B
    upper = A1 / A2 * B
    if lower - exact > SANDWICH_SLACK or exact - upper > SANDWICH_SLACK:
        raise AccuracyError(
            f"bounds violated at {p}: lower={lower!r} exact={exact!r} upper={upper!r}"
        )
    return FactorEstimate(lower, exact, upper, A1, A2, B)


def xi_optimal(alpha: float, beta: float) -> float:
    """Gap point at which kappa is smallest."""
    unif = uniformize_pair(alpha, beta)
    return alpha + jacobi_zn(unif.rho, unif.m) * math.sqrt((1.0 - alpha) * (1.0 + beta))


def reflect(p: NormalizedProblem) -> NormalizedProblem:
    """Mirror x -> -x: [-1, -beta] U [-alpha, 1] with point -xi (same kappa)."""
    return NormalizedProblem(-p.beta, -p.alpha, -p.xi)


def kappa_general(e: IntervalPair) -> FactorEstimate:
    """kappa(E, 0) for raw endpoints; invariant under the affine normalization."""
    return kappa_bounds(normalize(e))
