"""Independent numerical ground truth for kappa and the capacity.

Two routes that share no code with the theta-function machinery:

* potential theory: the Green's function of the complement of
  E = [a1, a2] U [a3, a4] with pole at infinity has real-axis derivative
  ``(t - z0) / sqrt|R(t)|``, ``R(t) = (t - a1)(t - a2)(t - a3)(t - a4)``, where
  z0 is fixed by requiring a zero integral over the gap. It is integrated with
  a square-root substitution at the endpoint singularities.
* approximation theory: minimal residual polynomials (``P(0) = 1``, smallest
  sup norm on a grid on E) from a linear program; the geometric decay rate of
  their norms approaches kappa.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np
from scipy.integrate import quad
from scipy.optimize import linprog

from .errors import ConvergenceError, DomainError, FitError, SolverError
from .geometry import IntervalPair, normalize

# beyond this multiple of the width the outer integral switches to log(t - a)
_FAR = 4.0


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-10
    max_refinements: int = 60

    def __post_init__(self):
        if not self.abs_tol > 0.0:
            raise ValueError("abs_tol must be positive")


@dataclass(frozen=True)
class ResidualConfig:
    grid_size: int = 4001
    degrees: Sequence[int] = field(default_factory=lambda: range(10, 41))
    lp_tol: float = 1e-9

    def __post_init__(self):
        if self.grid_size < 101:
            raise ValueError("grid_size must be at least 101")
        if len(self.degrees) == 0:
            raise ValueError("degrees must be nonempty")


class SlopeFit(NamedTuple):
    kappa: float
    residual: float


def _quad(f, lo, hi, cfg: QuadratureConfig) -> tuple[float, float]:
    out = quad(f, lo, hi, epsabs=cfg.abs_tol, epsrel=cfg.abs_tol, limit=cfg.max_refinements, full_output=1)
    value, err, info = out[0], out[1], out[2]
    ier = 0 if len(out) == 3 else 1
    if ier and err > 100.0 * cfg.abs_tol * max(1.0, abs(value)):
        raise ConvergenceError(f"quadrature failed on [{lo}, {hi}]: {out[3]}")
    return value, err


def _endpoint_integral(e: IntervalPair, end: float, x: float, f, cfg: QuadratureConfig):
    """Oriented integral of f(t) / sqrt|R(t)| from the endpoint ``end`` to x.

    No other endpoint may lie strictly between ``end`` and x.
    """
    others = [a for a in (e.a1, e.a2, e.a3, e.a4) if a != end]
    sigma = 1.0 if x > end else -1.0
    dist = abs(x - end)

    def rest(t):
        return math.sqrt(abs((t - others[0]) * (t - others[1]) * (t - others[2])))

    # t = end + sigma s^2 removes the inverse square root at ``end``
    def near(s):
        t = end + sigma * s * s
        return 2.0 * f(t) / rest(t)

    near_len = min(dist, _FAR * e.width)
    total, err = _quad(near, 0.0, math.sqrt(near_len), cfg)
    if dist > near_len:

        def far(y):
            d = math.exp(y)
            t = end + sigma * d
            return f(t) * d / math.sqrt(abs((t - end) * (t - others[0]) * (t - others[1]) * (t - others[2])))

        v, er = _quad(far, math.log(near_len), math.log(dist), cfg)
        total += v
        err += er
    return sigma * total, err


def green_gap_zero(e: IntervalPair, cfg: QuadratureConfig = QuadratureConfig()) -> float:
    """The zero z0 in (a2, a3) of the Green's function derivative.

    The gap moment is linear in z0, so z0 is the ratio of two moments.
    """
    mid = 0.5 * (e.a2 + e.a3)

    def gap_integral(f):
        left, _ = _endpoint_integral(e, e.a2, mid, f, cfg)
        right, _ = _endpoint_integral(e, e.a3, mid, f, cfg)
        return left - right

    m0 = gap_integral(lambda t: 1.0)
    m1 = gap_integral(lambda t: t - mid)
    z0 = mid + m1 / m0
    if not e.a2 < z0 < e.a3:
        raise ConvergenceError(f"gap zero {z0} outside ({e.a2}, {e.a3})")
    return z0


def gap_moment(e: IntervalPair, z: float, cfg: QuadratureConfig = QuadratureConfig()) -> float:
    """Integral of (t - z) / sqrt|R(t)| over the gap; vanishes at z = z0."""
    mid = 0.5 * (e.a2 + e.a3)
    f = lambda t: t - z  # noqa: E731
    left, _ = _endpoint_integral(e, e.a2, mid, f, cfg)
    right, _ = _endpoint_integral(e, e.a3, mid, f, cfg)
    return left - right


def green_value_with_error(
    e: IntervalPair, x: float, cfg: QuadratureConfig = QuadratureConfig()
) -> tuple[float, float]:
    """Green's function g(x) of the complement of E, with an error estimate."""
    if x in (e.a1, e.a2, e.a3, e.a4):
        return 0.0, 0.0
    if e.contains(x):
        raise DomainError(f"x={x} lies in E")
    z0 = green_gap_zero(e, cfg)
    if x > e.a4:
        end = e.a4
    elif x < e.a1:
        end = e.a1
    else:
        end = e.a2 if x - e.a2 <= e.a3 - x else e.a3
    value, err = _endpoint_integral(e, end, x, lambda t: t - z0, cfg)
    g = abs(value)
    return g, err + 8.0 * np.finfo(float).eps * (g + 1.0)


def green_value(e: IntervalPair, x: float, cfg: QuadratureConfig = QuadratureConfig()) -> float:
    return green_value_with_error(e, x, cfg)[0]


def kappa_oracle(e: IntervalPair, x: float, cfg: QuadratureConfig = QuadratureConfig()) -> float:
    """kappa = exp(-g(x)) by quadrature."""
    return math.exp(-green_value(e, x, cfg))


def cap_oracle(e: IntervalPair, cfg: QuadratureConfig = QuadratureConfig()) -> float:
    """Capacity from the Robin constant, d exp(-g(c + d)) as d -> infinity.

    Evaluated at d = 1e6 and 1e7 widths from the centre c and combined by one
    Richardson step, removing the O(1/d) term.
    """
    c = 0.5 * (e.a1 + e.a4)
    d1 = 1e6 * e.width
    d2 = 1e7 * e.width
    c1 = d1 * math.exp(-green_value(e, c + d1, cfg))
    c2 = d2 * math.exp(-green_value(e, c + d2, cfg))
    return (10.0 * c2 - c1) / 9.0


def residual_grid(alpha: float, beta: float, size: int) -> np.ndarray:
    """Chebyshev-distributed points (endpoints included) on each interval."""
    j = np.arange(size)
    c = np.cos(np.pi * j / (size - 1))[::-1]
    left = 0.5 * (alpha - 1.0) + 0.5 * (alpha + 1.0) * c
    right = 0.5 * (1.0 + beta) + 0.5 * (1.0 - beta) * c
    return np.concatenate([left, right])


def leja_points(grid: np.ndarray, count: int) -> np.ndarray:
    """Greedy discrete Leja sequence on the grid."""
    idx = [int(np.argmax(np.abs(grid)))]
    logs = np.zeros_like(grid)
    with np.errstate(divide="ignore"):
        for _ in range(count - 1):
            logs += np.log(np.abs(grid - grid[idx[-1]]))
            idx.append(int(np.argmax(logs)))
    return grid[idx]


def lagrange_matrix(nodes: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Entries l_j(x_i) of the Lagrange basis on ``nodes``."""
    diff_nodes = nodes[:, None] - nodes[None, :]
    np.fill_diagonal(diff_nodes, 1.0)
    weights = 1.0 / np.prod(diff_nodes, axis=1)
    diff = x[:, None] - nodes[None, :]
    out = np.empty((x.size, nodes.size))
    for j in range(nodes.size):
        d = diff.copy()
        d[:, j] = 1.0
        out[:, j] = weights[j] * np.prod(d, axis=1)
    return out


def min_residual_norm(e: IntervalPair, n: int, cfg: ResidualConfig = ResidualConfig()) -> float:
    """Discretized min ||P||_E over degree <= n polynomials with P(0) = 1.

    P is represented by its values v_j at n + 1 Leja nodes, so the constraint
    matrix stays O(1) even when the optimal norm is tiny. The program solved is
    max P(xi) subject to |P| <= 1 on the grid, whose reciprocal optimum is the
    minimal norm.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    p = normalize(e)
    if n == 0:
        return 1.0
    grid = residual_grid(p.alpha, p.beta, cfg.grid_size)
    nodes = leja_points(grid, n + 1)
    A = lagrange_matrix(nodes, grid)
    c = lagrange_matrix(nodes, np.array([p.xi]))[0]
    scale = np.max(np.abs(c))
    res = linprog(
        -c / scale,
        A_ub=np.vstack([A, -A]),
        b_ub=np.ones(2 * grid.size),
        bounds=(None, None),
        method="highs",
        options={"primal_feasibility_tolerance": cfg.lp_tol, "dual_feasibility_tolerance": cfg.lp_tol},
    )
    if res.status != 0 or not res.fun < 0.0:
        raise SolverError(f"linear program failed at degree {n}: {res.message}")
    return 1.0 / (-res.fun * scale)


def kappa_from_norms(norms: Sequence[tuple[int, float]]) -> SlopeFit:
    """Exponentiated least-squares slope of log L_n against n.

    ``residual`` is the RMS deviation of log L_n from the fitted line divided
    by the degree span, i.e. the scatter per unit degree. The staircase of
    sets on which odd and even degrees share a norm stays far below the 0.05
    rejection threshold.
    """
    if len(norms) < 8:
        raise FitError("need at least 8 degrees")
    n = np.array([d for d, _ in norms], dtype=float)
    L = np.array([v for _, v in norms], dtype=float)
    if np.any(L <= 0.0) or not np.all(np.isfinite(L)):
        raise FitError("norms must be positive and finite")
    order = np.argsort(n)
    n, y = n[order], np.log(L[order])
    if y[-1] > y[0]:
        raise FitError("norms increase with the degree")
    slope, intercept = np.polyfit(n, y, 1)
    rms = float(np.sqrt(np.mean((y - (slope * n + intercept)) ** 2)))
    residual = rms / (n[-1] - n[0])
    if residual > 0.05:
        raise FitError(f"fit residual {residual:.3g} exceeds 0.05")
    return SlopeFit(math.exp(min(slope, 0.0)), residual)


def kappa_polynomial(e: IntervalPair, cfg: ResidualConfig = ResidualConfig()) -> SlopeFit:
    return kappa_from_norms([(n, min_residual_norm(e, n, cfg)) for n in cfg.degrees])
