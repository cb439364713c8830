import math

import numpy as np
import pytest

from dislab.analytic import semicircle_quantile
from dislab.measure import energy_gap, ks_semicircle, report, wall_width
from dislab.particle import Configuration


def quantile_wall(n):
    heights = [semicircle_quantile((i + 0.5) / n) for i in range(n)]
    return Configuration(positions=np.column_stack([np.zeros(n), heights]))


@pytest.mark.parametrize("n", [10, 100, 1000])
def test_ks_of_exact_quantiles(n):
    assert ks_semicircle(quantile_wall(n)) <= 1.0 / (2 * n) + 1e-12


def test_ks_degenerate_configurations():
    c = Configuration(positions=np.zeros((7, 2)))
    assert math.isclose(ks_semicircle(c), 0.5, rel_tol=1e-14)
    c = Configuration(positions=np.array([[0.0, 3.0]]))
    assert math.isclose(ks_semicircle(c), 1.0, rel_tol=1e-14)


def test_ks_invariances():
    rng = np.random.default_rng(61)
    pos = rng.uniform(-1, 1, size=(30, 2))
    base = ks_semicircle(Configuration(positions=pos))
    shuffled = pos[rng.permutation(30)]
    assert ks_semicircle(Configuration(positions=shuffled)) == base
    shifted = pos.copy()
    shifted[:, 0] = rng.uniform(-9, 9, size=30)  # x1 is irrelevant
    assert ks_semicircle(Configuration(positions=shifted)) == base


def test_wall_width_examples():
    c = Configuration(positions=np.column_stack([np.zeros(5), np.arange(5.0)]))
    assert wall_width(c) == 0.0
    alternating = Configuration(
        positions=np.column_stack([(-1.0) ** np.arange(6), np.arange(6.0)])
    )
    assert wall_width(alternating) == 1.0


def test_wall_width_invariances():
    rng = np.random.default_rng(62)
    pos = rng.uniform(-2, 2, size=(25, 2))
    base = wall_width(Configuration(positions=pos))
    moved = pos.copy()
    moved[:, 1] = rng.uniform(-5, 5, size=25)  # x2 is irrelevant
    assert wall_width(Configuration(positions=moved)) == base
    flipped = pos.copy()
    flipped[:, 0] = -flipped[:, 0]
    assert wall_width(Configuration(positions=flipped)) == base


def test_energy_gap_examples():
    pair = Configuration(positions=np.array([[0.0, 0.5], [0.0, -0.5]]))
    expected = 0.25 - (0.75 + 0.5 * math.log(2.0))
    assert math.isclose(energy_gap(pair), expected, rel_tol=1e-14)
    coincident = Configuration(positions=np.array([[0.1, 0.1], [0.1, 0.1]]))
    assert energy_gap(coincident) == math.inf
    single = Configuration(positions=np.array([[0.0, 0.0]]))
    with pytest.raises(ValueError):
        energy_gap(single)


def test_report_fields():
    rep = report(quantile_wall(50))
    d = rep.to_dict()
    assert set(d) == {"ks_distance", "wall_width", "energy_gap", "n"}
    assert d["n"] == 50
    assert 0.0 <= d["ks_distance"] <= 1.0
    assert d["wall_width"] == 0.0
