"""Anisotropic pair potential for positive edge dislocations.

The interaction of two dislocations at planar offset ``x = (x1, x2)`` is

    V(x) = -log|x| + x1**2 / |x|**2,

a logarithmic repulsion plus a bounded anisotropy that vanishes on the
vertical axis and is maximal on the horizontal axis.  ``V(0)`` is set to
``+inf``; there is no mollification here, callers own singularity
avoidance (line searches and quadrature treat ``inf`` as "reject").

All functions are pure and thread-safe.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "potential",
    "potential_array",
    "potential_grad",
    "potential_grad_array",
    "confined_pair_gap",
]


def potential(p) -> float:
    """Interaction potential V(p).  Returns ``math.inf`` at p = 0."""
    x1 = float(p[0])
    x2 = float(p[1])
    r2 = x1 * x1 + x2 * x2
    if r2 == 0.0:
        return math.inf
    return -0.5 * math.log(r2) + x1 * x1 / r2


def potential_array(dx1, dx2) -> np.ndarray:
    """Vectorized V on offset arrays; ``inf`` wherever the offset is zero."""
    dx1 = np.asarray(dx1, dtype=float)
    dx2 = np.asarray(dx2, dtype=float)
    r2 = dx1 * dx1 + dx2 * dx2
    with np.errstate(divide="ignore", invalid="ignore"):
        out = -0.5 * np.log(r2) + dx1 * dx1 / r2
    return np.where(r2 == 0.0, np.inf, out)


def potential_grad(p) -> tuple[float, float]:
    """Gradient of V at p != 0.

    (dV/dx1, dV/dx2) = (-x1/r^2 + 2 x1 x2^2/r^4, -x2/r^2 - 2 x1^2 x2/r^4).
    """
    x1 = float(p[0])
    x2 = float(p[1])
    r2 = x1 * x1 + x2 * x2
    if r2 == 0.0:
        raise ValueError("potential_grad is undefined at the origin")
    r4 = r2 * r2
    g1 = -x1 / r2 + 2.0 * x1 * x2 * x2 / r4
    g2 = -x2 / r2 - 2.0 * x1 * x1 * x2 / r4
    return g1, g2


def potential_grad_array(dx1, dx2) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized gradient of V; offsets must be nonzero (not checked)."""
    dx1 = np.asarray(dx1, dtype=float)
    dx2 = np.asarray(dx2, dtype=float)
    r2 = dx1 * dx1 + dx2 * dx2
    r4 = r2 * r2
    g1 = -dx1 / r2 + 2.0 * dx1 * dx2 * dx2 / r4
    g2 = -dx2 / r2 - 2.0 * dx1 * dx1 * dx2 / r4
    return g1, g2


def confined_pair_gap(x, y) -> float:
    """Slack of the confined pair energy over its quadratic lower bound.

    Returns V(x-y) + (|x|^2 + |y|^2)/2 - (1/2 - 1/e)(|x|^2 + |y|^2),
    which simplifies to V(x-y) + (|x|^2 + |y|^2)/e and is >= 0 for any
    distinct pair of points.
    """
    dx1 = float(x[0]) - float(y[0])
    dx2 = float(x[1]) - float(y[1])
    if dx1 == 0.0 and dx2 == 0.0:
        raise ValueError("confined_pair_gap requires x != y")
    sq = (
        float(x[0]) ** 2
        + float(x[1]) ** 2
        + float(y[0]) ** 2
        + float(y[1]) ** 2
    )
    return potential((dx1, dx2)) + sq / math.e
