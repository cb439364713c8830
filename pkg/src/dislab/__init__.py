"""Numerical laboratory for an anisotropic dislocation interaction energy.

The library evaluates the pair potential V(x) = -log|x| + x1^2/|x|^2
exactly, verifies the Euler-Lagrange characterisation of its semicircle
equilibrium measure by independent analytic and quadrature routes,
realises the Fourier-side energy identity on grids, and minimizes the
discrete n-particle energy to exhibit wall formation.
"""

from .analytic import (
    Constants,
    F_axis,
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
from .fourier import (
    GridDensity,
    convexity_probe,
    fhat_weight,
    grid_energy,
    interaction_direct,
    interaction_spectral,
    vhat_pairing,
)
from .kernel import confined_pair_gap, potential, potential_grad
from .measure import EmpiricalReport, energy_gap, ks_semicircle, wall_width
from .particle import (
    Configuration,
    MinimizeOptions,
    MinimizeResult,
    discrete_energy,
    energy_grad,
    init_configuration,
    minimize,
)
from .quadrature import QuadratureResult, F_field, conv_potential, g_quadrature

__version__ = "0.1.0"
