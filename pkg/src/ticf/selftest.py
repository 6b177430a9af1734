"""Runtime self-test suites behind ``ticf selftest``."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable

from .capacity import cap_exact, cap_lower, cap_upper
from .factor import b_elliptic, b_gap, b_outside, envelope_A, kappa_bounds, kappa_exact
from .geometry import IntervalPair, NormalizedProblem, uniformize
from .oracle import QuadratureConfig, ResidualConfig, cap_oracle, kappa_oracle, kappa_polynomial
from .special import (
    incomplete_F,
    jacobi_sn_cn_dn,
    jacobi_zn,
    modulus_build,
    theta_family,
    theta_ratio_derivative,
    theta_ratio_shifted,
    theta_Theta,
)

K_GRID = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99)
FACTOR_SWEEP_PAIRS = ((-0.2, 0.1), (-0.5, 0.0), (-0.5, 0.5), (-0.9, -0.3), (-0.9, 0.5), (-0.9, 0.9))
CAPACITY_SWEEP_ALPHAS = (-0.8, -0.3, 0.3, 0.8)


@dataclass
class Check:
    suite: str
    name: str
    passed: bool
    detail: str = ""


def suite_special() -> list[Check]:
    out = []
    ident = per = special = 0.0
    for k in K_GRID:
        m = modulus_build(k)
        for j in range(201):
            u = j * m.K / 100
            s, c, d = jacobi_sn_cn_dn(u, m)
            ident = max(ident, abs(s * s + c * c - 1), abs(k * k * s * s + d * d - 1))
            per = max(per, abs(jacobi_sn_cn_dn(u + 4 * m.K, m).sn - s))
        s, c, d = jacobi_sn_cn_dn(m.K, m)
        special = max(special, abs(s - 1), abs(c), abs(d - m.k_prime), abs(jacobi_zn(m.K, m)))
        special = max(special, abs(jacobi_zn(0.5 * m.K, m) - 0.5 * (1 - m.k_prime)))
        special = max(special, abs(theta_Theta(0, m) - math.sqrt(2 * m.k_prime * m.K / math.pi)))
    out.append(Check("special", "sn/cn/dn identities", ident <= 1e-12, f"max={ident:.2e}"))
    out.append(Check("special", "period 4K", per <= 1e-12, f"max={per:.2e}"))
    out.append(Check("special", "values at 0, K/2, K", special <= 1e-12, f"max={special:.2e}"))
    leg = kf = 0.0
    for k in K_GRID:
        m = modulus_build(k)
        mc = modulus_build(m.k_prime, k)
        leg = max(leg, abs(m.E_c * m.K_prime + mc.E_c * m.K - m.K * m.K_prime - 0.5 * math.pi))
        kf = max(kf, abs(incomplete_F(0.5 * math.pi, k) / m.K - 1))
    out.append(Check("special", "Legendre relation", leg <= 1e-12, f"max={leg:.2e}"))
    out.append(Check("special", "F(pi/2, k) = K", kf <= 1e-14, f"max={kf:.2e}"))
    return out


def suite_lemmas() -> list[Check]:
    mono = l2 = l3z = l5eq = c1eq = 0.0
    l3sign = l4 = l5 = c1 = True
    for k in K_GRID:
        m = modulus_build(k)
        K, kp = m.K, m.k_prime
        skp = math.sqrt(kp)
        th = [theta_Theta(j * K / 100, m) for j in range(101)]
        if any(b <= a for a, b in zip(th, th[1:])):
            mono = max(mono, 1.0)
        mono = max(mono, abs(th[0] - skp * th[-1]))
        t4 = (2 / math.pi**2) * (1 + kp) * skp * K * K
        h4 = (2 / math.pi**2) * (1 - kp) * skp * K * K
        l2 = max(l2, abs(theta_Theta(0.5 * K, m) ** 4 / t4 - 1), abs(theta_family(0.5 * K, m)[0] ** 4 / h4 - 1))

        def f3(u):
            s, c, d = jacobi_sn_cn_dn(u, m)
            return jacobi_zn(u, m) - k * k * s * c / (skp + d)

        l3z = max(l3z, abs(f3(0.0)), abs(f3(0.5 * K)), abs(f3(K)))
        for j in range(1, 100):
            l3sign &= f3(j * K / 200) < 0 < f3(0.5 * K + j * K / 200)

        s4 = [theta_Theta(j * K / 100, m) + theta_family(j * K / 100, m)[2] for j in range(101)]
        l4 &= all(s4[j + 1] < s4[j] for j in range(50)) and all(s4[j + 1] > s4[j] for j in range(50, 100))

        lo = (8 * (1 + kp)) ** 0.25 * kp**0.125
        hi = 1 + skp
        th0 = theta_Theta(0.0, m)
        for j in range(101):
            u = j * K / 100
            s, c, d = jacobi_sn_cn_dn(u, m)
            g = theta_Theta(u, m) / th0 * (skp + d)
            l5 &= lo - 1e-12 <= g <= hi + 1e-12
            rhs = 1.0 / (d * (c * c + kp * s * s))
            r4 = (theta_Theta(u, m) / th0) ** 4
            c1 &= r4 >= rhs * (1 - 1e-12)
            if j in (0, 50, 100):
                l5eq = max(l5eq, abs(g - (lo if j == 50 else hi)))
                c1eq = max(c1eq, abs(r4 / rhs - 1))

    rng = random.Random(20110101)
    l6 = 0.0
    for _ in range(200):
        m = modulus_build(rng.uniform(0.05, 0.99))
        u = rng.uniform(-2 * m.K, 2 * m.K)
        a = rng.uniform(-m.K, m.K)
        h = 1e-5 * m.K
        fd = (theta_ratio_shifted(u + h, a, m) - theta_ratio_shifted(u - h, a, m)) / (2 * h)
        ex = theta_ratio_derivative(u, a, m)
        l6 = max(l6, abs(fd - ex) / max(abs(ex), 1e-3 * theta_ratio_shifted(u, a, m)))
    return [
        Check("lemmas", "Theta increasing on [0, K], Theta(0) = sqrt(k') Theta(K)", mono <= 1e-12, f"max={mono:.2e}"),
        Check("lemmas", "Theta^4 and H^4 at K/2", l2 <= 1e-12, f"max={l2:.2e}"),
        Check("lemmas", "zn - k^2 sn cn / (sqrt(k') + dn) vanishes at 0, K/2, K", l3z <= 1e-12, f"max={l3z:.2e}"),
        Check("lemmas", "zn - k^2 sn cn / (sqrt(k') + dn) negative then positive", l3sign),
        Check("lemmas", "Theta + Theta1 decreasing then increasing", l4),
        Check("lemmas", "Theta(u)/Theta(0) (sqrt(k') + dn) two-sided bound", l5),
        Check("lemmas", "two-sided bound attained at 0, K/2, K", l5eq <= 1e-12, f"max={l5eq:.2e}"),
        Check("lemmas", "Theta^4 ratio >= 1 / (dn (cn^2 + k' sn^2))", c1),
        Check("lemmas", "Theta^4 ratio equality at 0, K/2, K", c1eq <= 1e-10, f"max={c1eq:.2e}"),
        Check("lemmas", "shifted theta ratio derivative vs central differences", l6 <= 1e-6, f"max={l6:.2e}"),
    ]


def suite_bounds(points: int = 200) -> list[Check]:
    worst = 0.0
    for a, b in FACTOR_SWEEP_PAIRS:
        xs = [a + (b - a) * (j + 1) / (points + 1) for j in range(points)]
        xs += [s * (1.001 + 49 * j / (points - 1)) for j in range(points) for s in (1, -1)]
        for x in xs:
            e = kappa_bounds(NormalizedProblem(a, b, x))
            worst = min(worst, e.exact - e.lower, e.upper - e.exact)
    cap_worst = 0.0
    for a in CAPACITY_SWEEP_ALPHAS:
        for j in range(points):
            b = a + 1e-3 + (1 - 2e-3 - a) * j / (points - 1)
            ex = cap_exact(a, b)
            cap_worst = min(cap_worst, ex - cap_lower(a, b), cap_upper(a, b) - ex)
    rng = random.Random(7)
    bdev = 0.0
    for _ in range(100):
        a, b = sorted(rng.uniform(-0.99, 0.99) for _ in range(2))
        if b - a < 1e-3:
            continue
        p = NormalizedProblem(a, b, rng.uniform(a + 1e-6, b - 1e-6))
        u = uniformize(p)
        bdev = max(bdev, abs(b_gap(p) - b_elliptic(p, u)))
        x = rng.choice((1, -1)) * rng.uniform(1.001, 50)
        q = NormalizedProblem(a, b, x)
        bdev = max(bdev, abs(b_outside(q) - b_elliptic(q, u)))
    A1, A2 = envelope_A(-0.5, 0.5)
    return [
        Check("bounds", "kappa sandwich on the sweep pairs", worst >= -1e-12, f"min slack={worst:.2e}"),
        Check("bounds", "capacity sandwich on the sweep alphas", cap_worst >= -1e-12, f"min slack={cap_worst:.2e}"),
        Check("bounds", "B closed forms vs elliptic evaluation", bdev <= 1e-12, f"max={bdev:.2e}"),
        Check("bounds", "A1/A2 at (-1/2, 1/2)", abs(A1 / A2 - 1.0012928) <= 1e-6, f"{A1 / A2:.9f}"),
    ]


def suite_oracle() -> list[Check]:
    cfg = QuadratureConfig()
    dev = 0.0
    for a, b in FACTOR_SWEEP_PAIRS:
        for x in (0.5 * (a + b), 1.5, -5.0):
            p = NormalizedProblem(a, b, x)
            e = IntervalPair(-1 - x, a - x, b - x, 1 - x)
            ex = kappa_exact(p)
            dev = max(dev, abs(kappa_oracle(e, 0.0, cfg) / ex - 1))
    cdev = 0.0
    for a in CAPACITY_SWEEP_ALPHAS:
        b = 0.5 * (a + 1)
        cdev = max(cdev, abs(cap_oracle(IntervalPair(-1, a, b, 1), cfg) / cap_exact(a, b) - 1))
    fit = kappa_polynomial(IntervalPair(-1, -0.5, 0.5, 1), ResidualConfig(grid_size=1001, degrees=range(10, 31)))
    lp = abs(fit.kappa / math.sqrt(1 / 3) - 1)
    return [
        Check("oracle", "quadrature kappa vs theta kappa", dev <= 1e-7, f"max rel={dev:.2e}"),
        Check("oracle", "Robin constant vs theta capacity", cdev <= 1e-5, f"max rel={cdev:.2e}"),
        Check("oracle", "LP slope fit vs sqrt(1/3)", lp <= 0.02, f"rel={lp:.2e}"),
    ]


SUITES: dict[str, Callable[[], list[Check]]] = {
    "special": suite_special,
    "lemmas": suite_lemmas,
    "bounds": suite_bounds,
    "oracle": suite_oracle,
}


def run(names=None) -> list[Check]:
    checks = []
    for name in names or SUITES:
        checks.extend(SUITES[name]())
    return checks
