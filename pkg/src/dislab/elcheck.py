"""Euler-Lagrange verification for the semicircle law.

The equilibrium measure is characterised by two conditions on the field
F = V * m + |x|^2/2: equality with c1 = 1/2 + log(2)/2 on the support,
and F >= c1 on the whole plane.  The "quasi everywhere" qualifier of the
exact statement has no computational counterpart; the surrogate here is
a grid check with explicit tolerances, combining the quadrature
evaluator off the axis, the closed axis formula on it, and the exact
first-coordinate derivative as a monotonicity certificate.  Symmetry of
F in both coordinates restricts all grids to the closed first quadrant.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._ioutil import dumps_json, fmt_float, write_text
from .analytic import F_axis, SUPPORT_HALFWIDTH, constants, dF_dx1
from .quadrature import F_field

__all__ = [
    "SupportReport",
    "ELReport",
    "AxisProfile",
    "check_support",
    "check_global",
    "axis_profile",
    "el_report_json",
    "axis_profile_csv",
]

# Standoff from the support endpoints, where the square-root vanishing of
# the density makes quadrature slow; endpoint behaviour is covered by the
# continuity checks instead.
ENDPOINT_STANDOFF = 1e-3


@dataclass(frozen=True)
class SupportReport:
    """Equality check F(0, t) = c1 on interior support points."""

    max_deviation: float
    worst_t: float
    points_checked: int
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tol


@dataclass(frozen=True)
class ELReport:
    """Combined Euler-Lagrange report over support and plane grid."""

    support_max_deviation: float
    global_min_margin: float
    worst_point: tuple[float, float]
    points_checked: int


@dataclass(frozen=True)
class GlobalReport:
    """Inequality check F >= c1 on the first-quadrant grid."""

    min_margin: float
    worst_point: tuple[float, float]
    points_checked: int
    off_tube_min_margin: float
    dfdx1_min: float
    tol: float

    @property
    def passed(self) -> bool:
        return (
            self.min_margin >= -self.tol
            and self.off_tube_min_margin > 0.0
            and self.dfdx1_min > 0.0
        )


@dataclass(frozen=True)
class AxisProfile:
    t: np.ndarray
    f_closed: np.ndarray
    f_quad: np.ndarray
    diff: np.ndarray


def check_support(
    k: int, tol: float = 1e-6, quad_tol: float = 1e-9
) -> SupportReport:
    """Evaluate F by quadrature at k interior support points on the axis."""
    if k < 2:
        raise ValueError("need at least two support points")
    c1 = constants().el_constant
    lo = -SUPPORT_HALFWIDTH + ENDPOINT_STANDOFF
    hi = SUPPORT_HALFWIDTH - ENDPOINT_STANDOFF
    ts = np.linspace(lo, hi, k)
    max_dev, worst = -1.0, ts[0]
    for t in ts:
        dev = abs(F_field((0.0, t), quad_tol) - c1)
        if dev > max_dev:
            max_dev, worst = dev, t
    return SupportReport(
        max_deviation=max_dev, worst_t=float(worst), points_checked=k, tol=tol
    )


def check_global(
    xmax: float,
    step: float,
    tol: float = 1e-6,
    quad_tol: float = 1e-9,
    threads: int = 1,
) -> GlobalReport:
    """Check F >= c1 on [0, xmax]^2 and dF/dx1 > 0 off the axis.

    On-axis points (x1 = 0) use the closed axis formula; off-axis points
    use quadrature.  Off the support tube (x1 > step/2 or x2 > sqrt2) the
    margin must be strictly positive.  Grid points are independent, so
    evaluation may be spread over ``threads`` workers; the min/max
    reduction is order-independent.
    """
    if xmax <= 0.0 or not 0.0 < step < xmax:
        raise ValueError("need xmax > 0 and 0 < step < xmax")
    c1 = constants().el_constant
    npts = int(round(xmax / step)) + 1
    grid = np.linspace(0.0, xmax, npts)

    def margin_at(point):
        x1, x2 = point
        if x1 == 0.0:
            return F_axis(x2) - c1
        return F_field((x1, x2), quad_tol) - c1

    points = [(float(a), float(b)) for a in grid for b in grid]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            margins = list(pool.map(margin_at, points))
    else:
        margins = [margin_at(p) for p in points]

    min_margin, worst = math.inf, points[0]
    off_tube_min = math.inf
    for point, m in zip(points, margins):
        if m < min_margin:
            min_margin, worst = m, point
        in_tube = point[0] <= step / 2.0 and point[1] <= SUPPORT_HALFWIDTH
        if not in_tube and m < off_tube_min:
            off_tube_min = m

    dfdx1_min = min(
        dF_dx1(p) for p in points if p[0] > 0.0
    )
    return GlobalReport(
        min_margin=float(min_margin),
        worst_point=worst,
        points_checked=len(points),
        off_tube_min_margin=float(off_tube_min),
        dfdx1_min=float(dfdx1_min),
        tol=tol,
    )


def axis_profile(tmax: float, k: int, quad_tol: float = 1e-9) -> AxisProfile:
    """Tabulate F(0, t) by both evaluators on [0, tmax]."""
    if tmax <= SUPPORT_HALFWIDTH:
        raise ValueError("tmax must exceed the support halfwidth")
    if k < 2:
        raise ValueError("need at least two profile points")
    ts = np.linspace(0.0, tmax, k)
    closed = np.array([F_axis(t) for t in ts])
    quad = np.array([F_field((0.0, t), quad_tol) for t in ts])
    return AxisProfile(t=ts, f_closed=closed, f_quad=quad, diff=quad - closed)


def el_report_json(support: SupportReport, global_: GlobalReport) -> str:
    report = ELReport(
        support_max_deviation=support.max_deviation,
        global_min_margin=global_.min_margin,
        worst_point=global_.worst_point,
        points_checked=support.points_checked + global_.points_checked,
    )
    return dumps_json(
        {
            "schema_version": 1,
            "support_max_deviation": report.support_max_deviation,
            "global_min_margin": report.global_min_margin,
            "worst_point": list(report.worst_point),
            "points_checked": report.points_checked,
        }
    )


def axis_profile_csv(profile: AxisProfile, path) -> None:
    lines = ["t,f_closed,f_quad,diff"]
    for t, fc, fq, d in zip(
        profile.t, profile.f_closed, profile.f_quad, profile.diff
    ):
        lines.append(
            f"{fmt_float(t)},{fmt_float(fc)},{fmt_float(fq)},{fmt_float(d)}"
        )
    write_text(path, "\n".join(lines) + "\n")
