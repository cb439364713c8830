"""Shared builders for grid-density tests."""

import numpy as np

from dislab.fourier import GridDensity


def gaussian_bump(center, sigma):
    cx, cy = center

    def fn(x1, x2):
        return np.exp(-((x1 - cx) ** 2 + (x2 - cy) ** 2) / (2.0 * sigma**2))

    return fn


def random_blob(rng, max_bumps=4):
    """Random nonnegative mixture of Gaussian bumps inside |x| < 2."""
    k = int(rng.integers(2, max_bumps + 1))
    centers = rng.uniform(-1.5, 1.5, size=(k, 2))
    sigmas = rng.uniform(0.25, 0.6, size=k)
    weights = rng.uniform(0.2, 1.0, size=k)

    def fn(x1, x2):
        out = np.zeros_like(x1)
        for (cx, cy), s, w in zip(centers, sigmas, weights):
            out += w * np.exp(-((x1 - cx) ** 2 + (x2 - cy) ** 2) / (2.0 * s * s))
        return out

    return fn


def unit_mass_density(fn, L, N):
    gd = GridDensity.from_function(fn, L=L, N=N)
    return GridDensity(L=L, N=N, samples=gd.samples / gd.mass())


def neutral_dipole(L, N, center_pos, center_neg, sigma=0.35):
    pos = unit_mass_density(gaussian_bump(center_pos, sigma), L, N)
    neg = unit_mass_density(gaussian_bump(center_neg, sigma), L, N)
    return GridDensity(L=L, N=N, samples=pos.samples - neg.samples, neutral=True)
