import math

import numpy as np
import pytest

from ticf.errors import DomainError, FitError
from ticf.geometry import IntervalPair
from ticf.oracle import (
    QuadratureConfig,
    ResidualConfig,
    gap_moment,
    green_gap_zero,
    green_value,
    green_value_with_error,
    kappa_from_norms,
    lagrange_matrix,
    leja_points,
    min_residual_norm,
    residual_grid,
)

E = IntervalPair(-1.0, -0.5, 0.5, 1.0)


def test_gap_zero_symmetric_and_sign_change():
    e = IntervalPair(-1.0, -0.3, 0.6, 1.0)
    z0 = green_gap_zero(e)
    assert -0.3 < z0 < 0.6
    assert abs(gap_moment(e, z0)) < 1e-12
    assert gap_moment(e, z0 - 0.05) * gap_moment(e, z0 + 0.05) < 0
    assert green_gap_zero(E) == pytest.approx(0.0, abs=1e-14)


def test_single_interval_limit():
    # with a tiny gap the Green's function approaches that of [-1, 1]
    e = IntervalPair(-1.0, -1e-9, 1e-9, 1.0)
    x = 3.0
    assert green_value(e, x) == pytest.approx(math.log(x + math.sqrt(x * x - 1)), rel=1e-6)


def test_green_vanishes_on_E_and_rejects_interior():
    assert green_value(E, 0.5) == 0.0
    with pytest.raises(DomainError):
        green_value(E, 0.7)


def test_error_estimate_is_small_and_honest():
    g, err = green_value_with_error(E, 0.0)
    assert 0 < err < 1e-9
    assert abs(g - 0.5 * math.log(3)) <= err


def test_config_validation():
    with pytest.raises(ValueError):
        QuadratureConfig(abs_tol=0.0)
    with pytest.raises(ValueError):
        ResidualConfig(grid_size=10)
    with pytest.raises(ValueError):
        ResidualConfig(degrees=[])


def test_grid_and_leja():
    g = residual_grid(-0.5, 0.5, 101)
    assert g.size == 202
    assert g.min() == pytest.approx(-1) and g.max() == pytest.approx(1)
    assert np.all((g <= -0.5 + 1e-15) | (g >= 0.5 - 1e-15))
    nodes = leja_points(g, 12)
    assert len(set(nodes.tolist())) == 12


def test_lagrange_basis_reproduces_identity():
    nodes = np.array([-1.0, -0.6, 0.7, 1.0])
    M = lagrange_matrix(nodes, nodes)
    assert np.allclose(M, np.eye(4), atol=1e-14)
    x = np.linspace(-1, 1, 7)
    assert np.allclose(lagrange_matrix(nodes, x).sum(axis=1), 1.0, atol=1e-13)


def test_low_degree_norms():
    cfg = ResidualConfig(grid_size=2001)
    # the best line is the constant 1; the even quadratic 1 - x^2 / ... equioscillates
    assert min_residual_norm(E, 0, cfg) == 1.0
    assert min_residual_norm(E, 1, cfg) == pytest.approx(1.0, abs=1e-8)
    assert min_residual_norm(E, 2, cfg) == pytest.approx(0.6, abs=1e-6)
    assert min_residual_norm(E, 4, cfg) == pytest.approx(9 / 41, abs=1e-6)


def test_norms_decrease():
    cfg = ResidualConfig(grid_size=1001)
    e = IntervalPair(-1.0, -0.2, 0.4, 1.0)
    norms = [min_residual_norm(e, n, cfg) for n in range(0, 9)]
    assert all(b <= a + 1e-9 for a, b in zip(norms, norms[1:]))


def test_slope_fit_exact_geometric():
    norms = [(n, 3.0 * 0.4**n) for n in range(10, 30)]
    fit = kappa_from_norms(norms)
    assert fit.kappa == pytest.approx(0.4, rel=1e-12)
    assert fit.residual < 1e-12


def test_slope_fit_rejections():
    with pytest.raises(FitError):
        kappa_from_norms([(n, 0.5**n) for n in range(5)])
    with pytest.raises(FitError):
        kappa_from_norms([(n, 2.0**n) for n in range(10)])
    noisy = [(n, math.exp(5 * (-1) ** n)) for n in range(10, 20)]
    with pytest.raises(FitError):
        kappa_from_norms(noisy)


def test_capacity_oracle_scaled_symmetric():
    from ticf.oracle import cap_oracle

    assert cap_oracle(E) == pytest.approx(math.sqrt(3) / 4, abs=1e-6)
    assert cap_oracle(IntervalPair(1.0, 2.0, 3.0, 4.0)) == pytest.approx(math.sqrt(0.5), abs=1e-6)


def test_green_far_field():
    assert green_value(E, 1e6) == pytest.approx(math.log(1e6 / (math.sqrt(3) / 4)), abs=1e-6)


def test_tolerance_halving_within_error_estimate():
    e = IntervalPair(-1.0, -0.3, 0.6, 1.0)
    for x in (0.1, 1.7, -9.0):
        g1, err = green_value_with_error(e, x, QuadratureConfig(abs_tol=1e-10))
        g2 = green_value(e, x, QuadratureConfig(abs_tol=5e-11))
        assert abs(g1 - g2) <= err


def test_constant_norms_give_unit_factor():
    fit = kappa_from_norms([(n, 0.3) for n in range(10, 20)])
    assert fit.kappa == 1.0
