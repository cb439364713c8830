# Walk through the confined potential field F = V*m + |x|^2/2 of the
# semicircle measure: the exact constants, the two independent evaluators
# (closed forms vs adaptive quadrature), and the Euler-Lagrange structure
# that makes the semicircle law the energy minimizer.

import math

import numpy as np

from dislab import analytic, elcheck, quadrature

c = analytic.constants()
print("Exact constants of the problem")
print(f"  value of F on the support   c1     = {c.el_constant!r}")
print(f"  minimal energy              I(m1)  = {c.minimal_energy!r}")
print(f"  second moment of m1                = {c.confinement_moment}")
print(f"  support halfwidth                  = {c.support_halfwidth!r}")
print(f"  quadratic lower-bound coefficient  = {c.lower_bound_coeff!r}")
print()

# The quadrature route recovers c1 as the value of the convolution at the
# origin, without knowing any closed form.
r = quadrature.conv_potential((0.0, 0.0), 1e-10)
print(f"(V*m)(0,0) by adaptive quadrature = {r.value!r}")
print(f"  error estimate {r.error_estimate:.1e} with {r.evaluations} evaluations")
print(f"  deviation from c1: {r.value - c.el_constant:.2e}")
print()

# On the axis the field is constant on the support and grows outside;
# both evaluators agree to quadrature accuracy.
print("Axis profile F(0, t): closed form vs quadrature")
print(f"  {'t':>5} {'closed':>12} {'quadrature':>12} {'diff':>10}")
for t in (0.0, 1.0, math.sqrt(2.0), 1.6, 2.0, 3.0):
    closed = analytic.F_axis(t)
    quad_val = quadrature.F_field((0.0, t), 1e-10)
    print(f"  {t:5.3f} {closed:12.8f} {quad_val:12.8f} {quad_val - closed:10.1e}")
print()

# Off the axis the exact derivative of F in x1 is positive, which pins
# the global inequality F >= c1; sample it on a few rays.
print("Exact dF/dx1 (positive off the axis)")
for x2 in (0.0, 1.0, 2.0):
    vals = [analytic.dF_dx1((x1, x2)) for x1 in (0.1, 0.5, 1.0, 2.0)]
    print(f"  x2={x2}: " + ", ".join(f"{v:.4f}" for v in vals))
print()

# A coarse grid certificate (the acceptance suite runs the fine one).
report = elcheck.check_global(2.0, 0.1, tol=1e-6, quad_tol=1e-9)
print(f"Grid check on [0,2]^2 step 0.1 ({report.points_checked} points):")
print(f"  min F - c1            = {report.min_margin:.3e} at {report.worst_point}")
print(f"  min off the support   = {report.off_tube_min_margin:.3e} (> 0)")
print(f"  min dF/dx1 off axis   = {report.dfdx1_min:.3e} (> 0)")
