"""Real-argument Jacobi elliptic and theta functions.

Conventions follow Jacobi's older notation: ``Theta`` is theta_4 and ``H`` is
theta_1, both with argument ``pi*u/(2K)`` and nome ``q = exp(-pi K'/K)``.
Everything is double precision and scalar.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

from scipy.special import elliprf

from .errors import AccuracyError, DomainError

AGM_TOL = 1e-15
LANDEN_MAX_DEPTH = 32
THETA_MAX_TERMS = 64
THETA_TRUNCATION = 2.0**-53
MAX_NOME = 0.95


class JacobiTriple(NamedTuple):
    sn: float
    cn: float
    dn: float


@dataclass(frozen=True)
class Modulus:
    """Elliptic modulus together with its derived constants.

    ``K``/``K_prime`` are the complete integrals of the first kind at ``k`` and
    ``k_prime``, ``E_c`` the complete integral of the second kind at ``k`` and
    ``q`` the nome. Build instances with :func:`modulus_build`.
    """

    k: float
    k_prime: float
    K: float
    K_prime: float
    E_c: float
    q: float
    # descending Landen (AGM) sequences a_n, c_n with a_0 = 1, c_0 = k
    landen_a: tuple = field(repr=False, compare=False, default=())
    landen_c: tuple = field(repr=False, compare=False, default=())
    # (n, (-1)^n q^(n^2)) pairs of the truncated theta series
    theta_coeffs: tuple = field(repr=False, compare=False, default=())


def _agm_sequences(b0: float, c0: float) -> tuple[list[float], list[float]]:
    a = [1.0]
    c = [c0]
    b = b0
    while len(a) == 1 or c[-1] > AGM_TOL * a[-1]:
        if len(a) > LANDEN_MAX_DEPTH:
            raise AccuracyError("AGM iteration did not converge")
        an, bn = a[-1], b
        a.append(0.5 * (an + bn))
        c.append(0.5 * (an - bn))
        b = math.sqrt(an * bn)
    return a, c


def _check_modulus_value(name: str, x: float) -> None:
    if not (math.isfinite(x) and 0.0 < x < 1.0):
        raise DomainError(f"{name} must lie in (0, 1), got {x!r}")


def modulus_build(k: float, k_prime: float | None = None) -> Modulus:
    """Build the :class:`Modulus` for ``0 < k < 1``.

    ``k_prime`` may be supplied when it is known more accurately than
    ``sqrt(1 - k**2)`` (e.g. from a closed form in the problem data).
    """
    k = float(k)
    _check_modulus_value("k", k)
    if k_prime is None:
        k_prime = math.sqrt((1.0 - k) * (1.0 + k))
    else:
        k_prime = float(k_prime)
        _check_modulus_value("k_prime", k_prime)
        if abs(k * k + k_prime * k_prime - 1.0) > 1e-14:
            raise DomainError("k and k_prime are not complementary")
    if k_prime == 0.0:
        raise DomainError("k is too close to 1")

    a, c = _agm_sequences(k_prime, k)
    K = math.pi / (2.0 * a[-1])
    a_comp, _ = _agm_sequences(k, k_prime)
    K_prime = math.pi / (2.0 * a_comp[-1])

    # E/K = 1 - sum_n 2^(n-1) c_n^2
    s = sum(2.0 ** (n - 1) * cn * cn for n, cn in enumerate(c))
    E_c = K * (1.0 - s)

    q = math.exp(-math.pi * K_prime / K)
    if q > MAX_NOME:
        raise AccuracyError(f"nome q={q:.4g} exceeds {MAX_NOME}; geometry too degenerate")

    coeffs = []
    for n in range(1, THETA_MAX_TERMS + 1):
        qn = q ** (n * n)
        if qn < THETA_TRUNCATION:
            break
        coeffs.append((n, -qn if n % 2 else qn))

    return Modulus(k, k_prime, K, K_prime, E_c, q, tuple(a), tuple(c), tuple(coeffs))


def incomplete_F(phi: float, k: float) -> float:
    """Incomplete elliptic integral of the first kind F(phi, k).

    Evaluated as ``sin(phi) * R_F(cos^2 phi, 1 - k^2 sin^2 phi, 1)``.
    """
    if not (math.isfinite(phi) and 0.0 <= phi <= 0.5 * math.pi):
        raise DomainError(f"phi must lie in [0, pi/2], got {phi!r}")
    _check_modulus_value("k", float(k))
    s = math.sin(phi)
    c = math.cos(phi)
    if phi == 0.5 * math.pi:
        c = 0.0
    return inverse_sn_squared(s * s, c * c, (1.0 - k * s) * (1.0 + k * s))


def inverse_sn_squared(sn2: float, cn2: float, dn2: float) -> float:
    """Return u in [0, K] with the given squares of sn, cn and dn.

    Passing all three squares (rather than an angle) keeps full relative
    accuracy when u is close to K, where cn is small.
    """
    if sn2 < 0.0 or cn2 < 0.0 or dn2 <= 0.0:
        raise DomainError("squares of sn, cn, dn must be non-negative")
    if sn2 == 0.0:
        return 0.0
    return math.sqrt(sn2) * float(elliprf(cn2, dn2, 1.0))


def jacobi_sn_cn_dn(u: float, m: Modulus) -> JacobiTriple:
    """sn, cn, dn by descending Landen transformation."""
    if not math.isfinite(u):
        raise DomainError("u must be finite")
    a, c = m.landen_a, m.landen_c
    N = len(a) - 1
    phi = 2.0**N * a[N] * u
    for n in range(N, 0, -1):
        phi = 0.5 * (phi + math.asin(c[n] * math.sin(phi) / a[n]))
    sn = math.sin(phi)
    cn = math.cos(phi)
    # k'^2 + k^2 cn^2 keeps dn accurate near odd multiples of K
    dn = math.sqrt(m.k_prime**2 + (m.k * cn) ** 2)
    return JacobiTriple(sn, cn, dn)


def _theta_and_derivative(u: float, m: Modulus) -> tuple[float, float]:
    if not math.isfinite(u):
        raise DomainError("u must be finite")
    w = math.pi / m.K
    x = math.fmod(w * u, 2.0 * math.pi)
    th = 1.0
    dth = 0.0
    for n, cq in m.theta_coeffs:
        th += 2.0 * cq * math.cos(n * x)
        dth -= 2.0 * cq * n * math.sin(n * x)
    return th, w * dth


def theta_Theta(u: float, m: Modulus) -> float:
    """Jacobi's Theta(u) (= theta_4(pi u / 2K, q))."""
    return _theta_and_derivative(u, m)[0]


def jacobi_zn(u: float, m: Modulus) -> float:
    """Jacobi's zeta function, the logarithmic derivative of Theta."""
    th, dth = _theta_and_derivative(u, m)
    return dth / th


def theta_family(u: float, m: Modulus) -> tuple[float, float, float]:
    """Return ``(H, H1, Theta1)`` at ``u`` from Theta and sn, cn, dn."""
    th = theta_Theta(u, m)
    sn, cn, dn = jacobi_sn_cn_dn(u, m)
    sk = math.sqrt(m.k)
    skp = math.sqrt(m.k_prime)
    return sk * sn * th, sk / skp * cn * th, dn * th / skp


def theta_ratio_shifted(u: float, a: float, m: Modulus) -> float:
    """Theta(u - a) / Theta(u + a)."""
    return theta_Theta(u - a, m) / theta_Theta(u + a, m)


def theta_ratio_derivative(u: float, a: float, m: Modulus) -> float:
    """Closed-form u-derivative of :func:`theta_ratio_shifted`."""
    sn_u = jacobi_sn_cn_dn(u, m).sn
    sn_a, cn_a, dn_a = jacobi_sn_cn_dn(a, m)
    k2 = m.k * m.k
    bracket = 2.0 * jacobi_zn(a, m) - 2.0 * k2 * sn_u**2 * sn_a * cn_a * dn_a / (
        1.0 - k2 * sn_u**2 * sn_a**2
    )
    return -theta_ratio_shifted(u, a, m) * bracket
