"""Closed-form quantities attached to the semicircle equilibrium measure.

The equilibrium measure of the anisotropic dislocation energy lives on the
vertical axis and carries the semicircle profile sqrt(2 - t^2)/pi on
[-sqrt2, sqrt2].  This module collects everything that is known in closed
form about it:

* density, CDF and quantiles of the semicircle profile;
* the branch of sqrt(z^2 - 1) asymptotic to z at infinity, the function
  g(z) = log|z + sqrt(z^2 - 1)| - log 2 (Joukowsky identity for the
  circular average of log|z - cos(theta)|) and its gradient;
* the exact first-coordinate derivative of the confined potential field
  F = V * m + |x|^2/2 built from g;
* the axis derivative of the convolved potential (a finite-interval
  Hilbert transform with explicit branches) and the resulting closed form
  of F along the vertical axis;
* the handful of exact constants of the problem, computed from log/e/pi
  primitives rather than stored as decimals.

Everything here is pure; the quadrature module provides the independent
numerical route against which these formulas are tested.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

__all__ = [
    "Constants",
    "constants",
    "semicircle_density",
    "semicircle_cdf",
    "semicircle_quantile",
    "sqrt_branch",
    "g_closed",
    "grad_g",
    "dF_dx1",
    "axis_potential_derivative",
    "F_axis",
    "SUPPORT_HALFWIDTH",
    "CUT_GUARD",
]

SUPPORT_HALFWIDTH = math.sqrt(2.0)

# Inputs closer than this to the segment [-1, 1] are rejected rather than
# evaluated with silently degraded precision.
CUT_GUARD = 1e-12


@dataclass(frozen=True)
class Constants:
    """Exact constants of the minimization problem.

    el_constant        value of F on the support (1/2 + log(2)/2)
    minimal_energy     energy of the semicircle law (3/4 + log(2)/2)
    confinement_moment second moment of the semicircle law (1/2)
    support_halfwidth  sqrt(2)
    lower_bound_coeff  coefficient 1 - 2/e of the quadratic lower bound
    """

    el_constant: float
    minimal_energy: float
    confinement_moment: float
    support_halfwidth: float
    lower_bound_coeff: float


def constants() -> Constants:
    """Build the exact constants from primitives (no decimal literals)."""
    return Constants(
        el_constant=0.5 + 0.5 * math.log(2.0),
        minimal_energy=0.75 + 0.5 * math.log(2.0),
        confinement_moment=0.5,
        support_halfwidth=math.sqrt(2.0),
        lower_bound_coeff=1.0 - 2.0 / math.e,
    )


def semicircle_density(t):
    """Semicircle density sqrt(2 - t^2)/pi on [-sqrt2, sqrt2], else 0."""
    t = np.asarray(t, dtype=float)
    s = 2.0 - t * t
    out = np.where(s > 0.0, np.sqrt(np.maximum(s, 0.0)) / math.pi, 0.0)
    return float(out) if out.ndim == 0 else out


def semicircle_cdf(t):
    """CDF of the semicircle density, clamped to [0, 1]."""
    t = np.asarray(t, dtype=float)
    tc = np.clip(t, -SUPPORT_HALFWIDTH, SUPPORT_HALFWIDTH)
    s = np.sqrt(np.maximum(2.0 - tc * tc, 0.0))
    val = 0.5 + (tc * s + 2.0 * np.arcsin(tc / SUPPORT_HALFWIDTH)) / (2.0 * math.pi)
    out = np.clip(val, 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


def semicircle_quantile(p: float) -> float:
    """Inverse of semicircle_cdf on [0, 1]."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"quantile level must be in [0, 1], got {p}")
    if p == 0.0:
        return -SUPPORT_HALFWIDTH
    if p == 1.0:
        return SUPPORT_HALFWIDTH
    return brentq(
        lambda t: semicircle_cdf(t) - p,
        -SUPPORT_HALFWIDTH,
        SUPPORT_HALFWIDTH,
        xtol=1e-14,
        rtol=8.881784197001252e-16,
    )


def _cut_distance(z: complex) -> float:
    """Euclidean distance from z to the segment [-1, 1] of the real axis."""
    x, y = z.real, z.imag
    if abs(x) <= 1.0:
        return abs(y)
    return math.hypot(abs(x) - 1.0, y)


def _require_off_cut(z: complex) -> None:
    if _cut_distance(z) <= CUT_GUARD:
        raise ValueError(f"{z!r} lies on (or within {CUT_GUARD} of) the cut [-1, 1]")


def sqrt_branch(z: complex) -> complex:
    """The branch of sqrt(z^2 - 1) that behaves like z at infinity.

    The argument theta1 of z^2 - 1 is taken in [0, 2*pi) and halved when
    arg z is in [0, pi); for arg z in [pi, 2*pi) the angle is taken in
    [2*pi, 4*pi) before halving (equivalently, the [0, 2*pi) root is
    negated).  In the open first quadrant both components of the result
    are strictly positive.
    """
    z = complex(z)
    _require_off_cut(z)
    w2 = z * z - 1.0
    theta = math.atan2(w2.imag, w2.real) % (2.0 * math.pi)
    rho = math.sqrt(abs(w2))
    half = theta / 2.0
    root = complex(rho * math.cos(half), rho * math.sin(half))
    upper = z.imag > 0.0 or (z.imag == 0.0 and z.real > 0.0)
    return root if upper else -root


def g_closed(z: complex) -> float:
    """Circular average of log|z - cos(theta)|: log|z + sqrt(z^2-1)| - log 2."""
    z = complex(z)
    w = sqrt_branch(z)
    return math.log(abs(z + w)) - math.log(2.0)


def grad_g(z: complex) -> tuple[float, float]:
    """Real gradient of g at z = eta1 + i*eta2, off the cut.

    With w = sqrt(z^2 - 1), the complex derivative is
    dg/dz = conj(w) / (2 |z^2 - 1|), hence the gradient is
    (Re w, Im w) / |z^2 - 1|.  (The denominator exponent is pinned by the
    z -> infinity asymptotics g ~ log|z| and by finite differences.)
    """
    z = complex(z)
    w = sqrt_branch(z)
    denom = abs(z * z - 1.0)
    return w.real / denom, w.imag / denom


def dF_dx1(x) -> float:
    """Exact d/dx1 of the confined potential field F, for x1 > 0.

    After rescaling xi_i = x_i/sqrt2 the derivative collapses onto g
    evaluated at z = xi2 + i*xi1 (the coordinates swap roles):

        dF/dx1 = sqrt2 * xi1 * (xi2 * dg/deta1 + xi1 * dg/deta2).

    Strictly positive for x1 > 0, x2 >= 0.
    """
    x1 = float(x[0])
    x2 = float(x[1])
    if x1 <= 0.0:
        raise ValueError(f"dF_dx1 requires x1 > 0, got x1={x1}")
    xi1 = x1 / SUPPORT_HALFWIDTH
    xi2 = x2 / SUPPORT_HALFWIDTH
    g1, g2 = grad_g(complex(xi2, xi1))
    return SUPPORT_HALFWIDTH * xi1 * (xi2 * g1 + xi1 * g2)


def axis_potential_derivative(t: float) -> float:
    """d/dx2 of the convolved potential on the vertical axis.

    Finite-interval Hilbert transform of the semicircle density:
    -t on the support, -t +/- sqrt(t^2 - 2) outside (sign of the root
    opposing t), continuous across the endpoints.
    """
    t = float(t)
    if t > SUPPORT_HALFWIDTH:
        return -t + math.sqrt(t * t - 2.0)
    if t < -SUPPORT_HALFWIDTH:
        return -t - math.sqrt(t * t - 2.0)
    return -t


def F_axis(t: float) -> float:
    """Closed form of F(0, t): constant on the support, growing outside.

    Outside the support, integrating dF/dt = sqrt(t^2 - 2) from sqrt2 gives
    F(0, t) = c1 + |t| sqrt(t^2-2)/2 - log((|t| + sqrt(t^2-2))/sqrt2),
    with the constant fixed by continuity at the endpoint.
    """
    a = abs(float(t))
    c1 = 0.5 + 0.5 * math.log(2.0)
    if a <= SUPPORT_HALFWIDTH:
        return c1
    s = math.sqrt(a * a - 2.0)
    return c1 + 0.5 * a * s - math.log((a + s) / SUPPORT_HALFWIDTH)
