"""Empirical-measure diagnostics for particle configurations.

Quantifies how close a configuration is to the mean-field prediction:
Kolmogorov-Smirnov distance of the vertical marginal to the semicircle
law, RMS horizontal spread (wall width), and the scaled-energy gap to
the continuum minimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict

import numpy as np

from .analytic import constants, semicircle_cdf
from .particle import Configuration, discrete_energy

__all__ = ["EmpiricalReport", "ks_semicircle", "wall_width", "energy_gap", "report"]


@dataclass(frozen=True)
class EmpiricalReport:
    ks_distance: float
    wall_width: float
    energy_gap: float
    n: int

    def to_dict(self) -> dict:
        return asdict(self)


def ks_semicircle(c: Configuration) -> float:
    """sup_t |empirical CDF of the x2 marginal - semicircle CDF(t)|.

    Evaluated one-sided at the 2n jump candidates of the empirical CDF;
    tied heights collapse into a single jump.
    """
    heights = np.sort(c.positions[:, 1])
    n = heights.size
    cdf = np.atleast_1d(semicircle_cdf(heights))
    upper = np.arange(1, n + 1) / n - cdf
    lower = cdf - np.arange(0, n) / n
    return float(max(upper.max(), lower.max(), 0.0))


def wall_width(c: Configuration) -> float:
    """RMS of the horizontal coordinates: zero for a perfect wall."""
    x1 = c.positions[:, 0]
    return math.sqrt(float((x1 * x1).mean()))


def energy_gap(c: Configuration) -> float:
    """w_n / n^2 minus the mean-field minimum 3/4 + log(2)/2."""
    if c.n < 2:
        raise ValueError("energy_gap needs at least two particles")
    return discrete_energy(c) / c.n**2 - constants().minimal_energy


def report(c: Configuration) -> EmpiricalReport:
    return EmpiricalReport(
        ks_distance=ks_semicircle(c),
        wall_width=wall_width(c),
        energy_gap=energy_gap(c),
        n=c.n,
    )
