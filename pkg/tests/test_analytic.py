import cmath
import math

import numpy as np
import pytest
from scipy.integrate import quad

from dislab.analytic import (
    CUT_GUARD,
    F_axis,
    SUPPORT_HALFWIDTH,
    axis_potential_derivative,
    constants,
    dF_dx1,
    g_closed,
    grad_g,
    semicircle_cdf,
    semicircle_density,
    semicircle_quantile,
    sqrt_branch,
)

C1 = 0.5 + 0.5 * math.log(2.0)


def test_constants_values():
    c = constants()
    assert c.el_constant == 0.8465735902799727
    assert c.minimal_energy == 1.0965735902799727
    assert c.confinement_moment == 0.5
    assert c.support_halfwidth == math.sqrt(2.0)
    assert math.isclose(c.lower_bound_coeff, 1.0 - 2.0 / math.e, rel_tol=1e-15)


def test_constants_internal_relation():
    # minimal energy = EL constant + half the confinement moment
    c = constants()
    assert math.isclose(
        c.minimal_energy, c.el_constant + 0.5 * c.confinement_moment, rel_tol=1e-15
    )


def test_density_examples():
    assert math.isclose(semicircle_density(0.0), math.sqrt(2.0) / math.pi, rel_tol=1e-15)
    assert semicircle_density(math.sqrt(2.0)) == 0.0
    assert semicircle_density(2.0) == 0.0


def test_density_normalization_and_moment():
    mass, _ = quad(semicircle_density, -SUPPORT_HALFWIDTH, SUPPORT_HALFWIDTH)
    assert abs(mass - 1.0) <= 1e-10
    moment, _ = quad(
        lambda t: t * t * semicircle_density(t), -SUPPORT_HALFWIDTH, SUPPORT_HALFWIDTH
    )
    assert abs(moment - 0.5) <= 1e-10


def test_cdf_examples():
    assert semicircle_cdf(0.0) == 0.5
    assert semicircle_cdf(math.sqrt(2.0)) == 1.0
    assert semicircle_cdf(-5.0) == 0.0
    numeric, _ = quad(semicircle_density, -SUPPORT_HALFWIDTH, 1.0, epsabs=1e-14)
    assert abs(semicircle_cdf(1.0) - numeric) <= 1e-12


def test_quantile_roundtrip():
    for p in (0.01, 0.25, 0.5, 0.9, 0.999):
        t = semicircle_quantile(p)
        assert abs(semicircle_cdf(t) - p) <= 1e-12
    assert semicircle_quantile(0.0) == -SUPPORT_HALFWIDTH
    assert semicircle_quantile(1.0) == SUPPORT_HALFWIDTH
    with pytest.raises(ValueError):
        semicircle_quantile(1.5)


def test_sqrt_branch_examples():
    w = sqrt_branch(1j)
    assert abs(w - 1j * math.sqrt(2.0)) <= 1e-15
    assert sqrt_branch(1.25 + 0j) == 0.75
    w = sqrt_branch(1 + 1j)
    assert w.real > 0 and w.imag > 0
    assert abs(w * w - (-1 + 2j)) <= 1e-12


def test_sqrt_branch_square_back_all_quadrants():
    rng = np.random.default_rng(21)
    count = 0
    while count < 10_000:
        z = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
        if z.imag == 0 and abs(z.real) <= 1 + 1e-6:
            continue
        count += 1
        w = sqrt_branch(z)
        target = z * z - 1.0
        assert abs(w * w - target) <= 1e-12 * max(1.0, abs(target))
        if z.real > 0 and z.imag > 0:
            assert w.real > 0 and w.imag > 0


def test_sqrt_branch_asymptotic_to_z():
    for angle in (0.3, 1.7, 3.3, 5.1):
        z = 1e6 * cmath.exp(1j * angle)
        assert abs(sqrt_branch(z) / z - 1.0) <= 1e-9


def test_sqrt_branch_negative_real_axis():
    # continuity with the asymptotic branch: negative square root there
    assert math.isclose(sqrt_branch(-1.25 + 0j).real, -0.75, rel_tol=1e-15)


def test_cut_guard_rejects():
    for z in (0.0j, 0.5 + 0j, 1.0 + 0j, -1.0 + 0j, 0.3 + 1e-13j):
        with pytest.raises(ValueError):
            sqrt_branch(z)
        with pytest.raises(ValueError):
            g_closed(z)
        with pytest.raises(ValueError):
            grad_g(z)
    assert CUT_GUARD == 1e-12


def test_g_closed_examples():
    assert g_closed(1.25 + 0j) == 0.0
    assert math.isclose(g_closed(2.0 + 0j), math.log((2 + math.sqrt(3)) / 2), rel_tol=1e-14)
    assert math.isclose(
        g_closed(1j), math.log(1 + math.sqrt(2)) - math.log(2), rel_tol=1e-14
    )


def test_grad_g_examples():
    g1, g2 = grad_g(1j)
    assert abs(g1) <= 1e-15
    assert math.isclose(g2, 1 / math.sqrt(2), rel_tol=1e-14)
    g1, g2 = grad_g(2.0 + 0j)
    assert math.isclose(g1, 1 / math.sqrt(3), rel_tol=1e-14)
    assert g2 == 0.0


@pytest.mark.parametrize("z", [1 + 1j, 0.4 + 0.8j, 2.5 + 0.3j, -1.2 + 0.7j])
def test_grad_g_is_gradient(z):
    h = 1e-6
    g1, g2 = grad_g(z)
    f1 = (g_closed(z + h) - g_closed(z - h)) / (2 * h)
    f2 = (g_closed(z + h * 1j) - g_closed(z - h * 1j)) / (2 * h)
    scale = math.hypot(g1, g2)
    assert abs(g1 - f1) / scale <= 1e-6
    assert abs(g2 - f2) / scale <= 1e-6


def test_dF_dx1_examples():
    assert math.isclose(dF_dx1((math.sqrt(2.0), 0.0)), 1.0, rel_tol=1e-14)
    # far field: confinement gradient x1 dominates, interaction ~ -1/x1
    val = dF_dx1((10.0, 0.0))
    assert 9.8 <= val <= 9.95
    with pytest.raises(ValueError):
        dF_dx1((0.0, 1.0))
    with pytest.raises(ValueError):
        dF_dx1((-0.5, 1.0))


def test_dF_dx1_positive_on_grid():
    xs = np.arange(0.05, 3.0 + 1e-9, 0.05)
    ys = np.arange(0.0, 3.0 + 1e-9, 0.05)
    values = [dF_dx1((x1, x2)) for x1 in xs for x2 in ys]
    assert min(values) > 0.0


def test_axis_potential_derivative_branches():
    assert axis_potential_derivative(1.0) == -1.0
    assert math.isclose(
        axis_potential_derivative(2.0), -2.0 + math.sqrt(2.0), rel_tol=1e-15
    )
    hw = math.sqrt(2.0)
    inside = axis_potential_derivative(hw)
    outside = axis_potential_derivative(hw + 1e-15)
    assert math.isclose(inside, -hw, rel_tol=1e-15)
    assert abs(outside - inside) <= 1e-7
    # odd function
    assert axis_potential_derivative(-2.0) == -axis_potential_derivative(2.0)


def test_F_axis_values():
    assert F_axis(0.0) == C1
    assert F_axis(1.0) == C1
    assert F_axis(-0.3) == C1
    assert math.isclose(F_axis(2.0), 1.3794135656335247, rel_tol=1e-15)
    assert F_axis(2.0) == F_axis(-2.0)


def test_F_axis_continuity_and_growth():
    hw = math.sqrt(2.0)
    assert abs(F_axis(hw + 1e-12) - C1) <= 1e-14
    takeoff = F_axis(hw + 1e-6) - C1
    assert 0.0 < takeoff < 1e-8
    ts = np.linspace(hw, 4.0, 200)
    vals = np.array([F_axis(t) for t in ts])
    assert np.all(np.diff(vals) > 0.0)
    assert np.all(vals >= C1)
