"""Adaptive quadrature route to the convolved potential and to g.

This is the independent numerical evaluator used to cross-check every
closed form in :mod:`dislab.analytic`: the circular-average integral
behind g, and the semicircle convolution

    (V * m)(x) = (1/pi) * integral_{-sqrt2}^{sqrt2}
        [ -log(x1^2 + (x2-t)^2)/2 + x1^2/(x1^2 + (x2-t)^2) ] sqrt(2-t^2) dt,

whose integrand has a logarithmic singularity at t = x2 when x1 = 0 and
square-root behaviour at the endpoints.  Integration is delegated to
QUADPACK (scipy.integrate.quad); singular abscissae are always passed as
panel boundaries, which selects the QAGP rule built for interior
integrable singularities.  Results are bit-reproducible call to call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import quad

from .analytic import SUPPORT_HALFWIDTH, _require_off_cut

__all__ = [
    "QuadratureResult",
    "QuadratureError",
    "DEFAULT_TOL",
    "EVAL_BUDGET",
    "g_quadrature",
    "conv_potential",
    "F_field",
]

DEFAULT_TOL = 1e-10

# Maximum integrand evaluations per call; QUADPACK spends 21 per panel.
EVAL_BUDGET = 10**6


class QuadratureError(RuntimeError):
    """Requested tolerance not reached within the evaluation budget."""


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int


class _Counted:
    """Wrap an integrand, counting evaluations."""

    def __init__(self, fn):
        self.fn = fn
        self.calls = 0

    def __call__(self, t):
        self.calls += 1
        return self.fn(t)


def _integrate(fn, a, b, tol, points=None, budget=EVAL_BUDGET) -> QuadratureResult:
    if tol <= 0.0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    counted = _Counted(fn)
    limit = max(50, budget // 21)
    value, abserr = quad(
        counted, a, b, epsabs=tol, epsrel=0.0, limit=limit, points=points
    )
    if counted.calls > budget:
        raise QuadratureError(
            f"evaluation budget exceeded: {counted.calls} > {budget}"
        )
    if not math.isfinite(value) or abserr > tol:
        raise QuadratureError(
            f"tolerance {tol:g} not reached (value={value!r}, abserr={abserr:g})"
        )
    return QuadratureResult(value=value, error_estimate=abserr, evaluations=counted.calls)


def g_quadrature(
    z: complex, tol: float = DEFAULT_TOL, budget: int = EVAL_BUDGET
) -> QuadratureResult:
    """Direct integral (1/4pi) int_{-pi}^{pi} log((eta1-cos t)^2 + eta2^2) dt."""
    z = complex(z)
    _require_off_cut(z)
    eta1, eta2 = z.real, z.imag
    e2sq = eta2 * eta2

    def integrand(theta):
        d = eta1 - math.cos(theta)
        return math.log(d * d + e2sq)

    # Error scales with the 1/(4pi) prefactor; tighten the raw tolerance.
    raw = _integrate(integrand, -math.pi, math.pi, tol * 4.0 * math.pi, budget=budget)
    scale = 1.0 / (4.0 * math.pi)
    return QuadratureResult(
        value=raw.value * scale,
        error_estimate=raw.error_estimate * scale,
        evaluations=raw.evaluations,
    )


def conv_potential(
    x, tol: float = DEFAULT_TOL, budget: int = EVAL_BUDGET
) -> QuadratureResult:
    """Convolution of V with the semicircle measure, evaluated at x.

    The abscissa t = x2, when interior, is always a panel boundary: for
    x1 = 0 it is a genuine log singularity, for small x1 a sharp peak.
    """
    x1 = float(x[0])
    x2 = float(x[1])
    x1sq = x1 * x1
    hw = SUPPORT_HALFWIDTH

    def integrand(t):
        d = x2 - t
        r2 = x1sq + d * d
        weight = math.sqrt(max(2.0 - t * t, 0.0))
        return (-0.5 * math.log(r2) + x1sq / r2) * weight

    points = [x2] if -hw < x2 < hw else None
    raw = _integrate(integrand, -hw, hw, tol * math.pi, points=points, budget=budget)
    return QuadratureResult(
        value=raw.value / math.pi,
        error_estimate=raw.error_estimate / math.pi,
        evaluations=raw.evaluations,
    )


def F_field(x, tol: float = DEFAULT_TOL) -> float:
    """Confined potential field F(x) = (V * m)(x) + |x|^2 / 2 by quadrature."""
    x1 = float(x[0])
    x2 = float(x[1])
    return conv_potential(x, tol).value + 0.5 * (x1 * x1 + x2 * x2)
