import math

import numpy as np
import pytest

from dislab.kernel import (
    confined_pair_gap,
    potential,
    potential_array,
    potential_grad,
    potential_grad_array,
)


def test_potential_examples():
    assert potential((1.0, 0.0)) == 1.0
    assert math.isclose(potential((0.0, 2.0)), -math.log(2.0), rel_tol=1e-15)
    assert potential((0.0, 0.0)) == math.inf


def test_axis_reduction_exact():
    for t in (0.25, 1.0, 3.0, 17.5, -0.75):
        assert potential((0.0, t)) == -math.log(abs(t))


def test_evenness():
    rng = np.random.default_rng(11)
    p = rng.uniform(-5, 5, size=(10_000, 2))
    p = p[np.hypot(p[:, 0], p[:, 1]) > 1e-9]
    v = potential_array(p[:, 0], p[:, 1])
    np.testing.assert_allclose(potential_array(-p[:, 0], -p[:, 1]), v, rtol=1e-14)
    np.testing.assert_allclose(potential_array(p[:, 0], -p[:, 1]), v, rtol=1e-14)
    np.testing.assert_allclose(potential_array(-p[:, 0], p[:, 1]), v, rtol=1e-14)


def test_anisotropy_range():
    rng = np.random.default_rng(12)
    p = rng.uniform(-4, 4, size=(10_000, 2))
    r = np.hypot(p[:, 0], p[:, 1])
    keep = r > 1e-9
    excess = potential_array(p[keep, 0], p[keep, 1]) + np.log(r[keep])
    assert excess.min() >= -1e-14
    assert excess.max() <= 1.0 + 1e-14


def test_grad_examples():
    assert potential_grad((1.0, 0.0)) == (-1.0, 0.0)
    assert potential_grad((0.0, 1.0)) == (0.0, -1.0)
    with pytest.raises(ValueError):
        potential_grad((0.0, 0.0))


def test_grad_matches_finite_differences():
    rng = np.random.default_rng(13)
    h = 1e-6
    checked = 0
    while checked < 1000:
        p = rng.uniform(-10, 10, size=2)
        r = math.hypot(*p)
        if not 0.1 <= r <= 10.0:
            continue
        checked += 1
        g1, g2 = potential_grad(p)
        f1 = (potential((p[0] + h, p[1])) - potential((p[0] - h, p[1]))) / (2 * h)
        f2 = (potential((p[0], p[1] + h)) - potential((p[0], p[1] - h))) / (2 * h)
        scale = max(1.0, math.hypot(g1, g2))
        assert abs(g1 - f1) / scale <= 1e-6
        assert abs(g2 - f2) / scale <= 1e-6


def test_grad_array_matches_scalar():
    rng = np.random.default_rng(14)
    p = rng.uniform(-3, 3, size=(50, 2))
    g1, g2 = potential_grad_array(p[:, 0], p[:, 1])
    for i in range(50):
        s1, s2 = potential_grad(p[i])
        assert g1[i] == s1 and g2[i] == s2


def test_confined_pair_gap_examples():
    # vertical pair at distance 2: V = -log 2, quadratic slack 2/e
    gap = confined_pair_gap((0.0, 1.0), (0.0, -1.0))
    assert math.isclose(gap, -math.log(2.0) + 2.0 / math.e, rel_tol=1e-14)
    assert gap >= 0.0

    direct = potential((3.0, 0.0)) + 9.0 / math.e
    assert math.isclose(confined_pair_gap((3.0, 0.0), (0.0, 0.0)), direct, rel_tol=1e-14)
    assert confined_pair_gap((3.0, 0.0), (0.0, 0.0)) >= 0.0

    assert confined_pair_gap((1e-8, 0.0), (0.0, 0.0)) > 15.0

    with pytest.raises(ValueError):
        confined_pair_gap((1.0, 2.0), (1.0, 2.0))


def test_confined_pair_gap_lower_bound_bulk():
    rng = np.random.default_rng(15)
    x = rng.uniform(-6, 6, size=(100_000, 2))
    y = rng.uniform(-6, 6, size=(100_000, 2))
    v = potential_array(x[:, 0] - y[:, 0], x[:, 1] - y[:, 1])
    gap = v + ((x * x).sum(axis=1) + (y * y).sum(axis=1)) / math.e
    assert gap.min() >= -1e-12
    # scalar route agrees with the vectorized one on a subsample
    for i in range(0, 100_000, 5000):
        assert math.isclose(
            confined_pair_gap(x[i], y[i]), float(gap[i]), rel_tol=1e-12, abs_tol=1e-12
        )
