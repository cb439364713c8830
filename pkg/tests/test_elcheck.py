import json
import math

import numpy as np
import pytest

from dislab.analytic import F_axis
from dislab.elcheck import (
    axis_profile,
    axis_profile_csv,
    check_global,
    check_support,
    el_report_json,
)
from dislab.quadrature import F_field

C1 = 0.5 + 0.5 * math.log(2.0)


def test_check_support_interior_points():
    rep = check_support(21, tol=1e-6, quad_tol=1e-9)
    assert rep.points_checked == 21
    assert rep.max_deviation <= 1e-6
    assert rep.passed


def test_check_support_near_endpoints():
    # k=2 puts both points at the standoff distance from the endpoints
    rep = check_support(2, tol=1e-6, quad_tol=1e-9)
    assert rep.max_deviation <= 1e-6


def test_check_support_rejects_k1():
    with pytest.raises(ValueError):
        check_support(1)


def test_check_global_coarse():
    rep = check_global(1.6, 0.2, tol=1e-6, quad_tol=1e-9)
    assert rep.points_checked == 81
    assert rep.min_margin >= -1e-6
    assert rep.worst_point[0] == 0.0  # attained on the support
    assert rep.worst_point[1] <= math.sqrt(2.0)
    assert rep.off_tube_min_margin > 0.0
    assert rep.dfdx1_min > 0.0
    assert rep.passed


def test_check_global_threads_agree():
    a = check_global(1.0, 0.25, quad_tol=1e-9, threads=1)
    b = check_global(1.0, 0.25, quad_tol=1e-9, threads=4)
    assert a == b


def test_check_global_rejects_degenerate_step():
    with pytest.raises(ValueError):
        check_global(1.0, 1.0)
    with pytest.raises(ValueError):
        check_global(1.0, 2.0)


def test_monotone_in_x1():
    for x2 in (0.0, 0.5, 1.0, 2.0):
        vals = [F_field((x1, x2), 1e-10) for x1 in (0.2, 0.6, 1.0, 1.8, 2.6)]
        assert np.all(np.diff(vals) > 0.0)


def test_field_symmetry():
    rng = np.random.default_rng(71)
    tol = 1e-9
    for _ in range(100):
        x1 = rng.uniform(0.05, 2.5)
        x2 = rng.uniform(0.05, 2.5)
        base = F_field((x1, x2), tol)
        assert abs(F_field((-x1, x2), tol) - base) <= 2 * tol
        assert abs(F_field((x1, -x2), tol) - base) <= 2 * tol


def test_axis_profile():
    prof = axis_profile(3.0, 12, quad_tol=1e-9)
    assert prof.t.shape == (12,)
    assert np.abs(prof.diff).max() <= 1e-7
    outside = prof.t > math.sqrt(2.0)
    assert np.all(prof.f_closed[outside] > C1)
    # the t=2 style row: closed form against its frozen value
    assert math.isclose(F_axis(2.0), 1.3794135656335247, rel_tol=1e-15)


def test_axis_profile_rejections():
    with pytest.raises(ValueError):
        axis_profile(1.0, 10)
    with pytest.raises(ValueError):
        axis_profile(3.0, 1)


def test_axis_profile_csv(tmp_path):
    prof = axis_profile(2.0, 5, quad_tol=1e-9)
    path = tmp_path / "profile.csv"
    axis_profile_csv(prof, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "t,f_closed,f_quad,diff"
    assert len(lines) == 6


def test_el_report_json_fields():
    support = check_support(5, quad_tol=1e-9)
    global_ = check_global(1.0, 0.25, quad_tol=1e-9)
    payload = json.loads(el_report_json(support, global_))
    assert payload["schema_version"] == 1
    assert set(payload) == {
        "schema_version",
        "support_max_deviation",
        "global_min_margin",
        "worst_point",
        "points_checked",
    }
    assert payload["points_checked"] == 5 + 25
