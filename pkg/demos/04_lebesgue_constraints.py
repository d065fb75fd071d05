"""Fixing the Lebesgue area instead of the hyperbolic measure.

With the Euclidean area fixed, the constant function gives closed-form
values on the centred disc or on the boundary annulus.  For alpha > 0 the
monomials z^n still push their mass towards the boundary, so the annulus
does not minimise the optimal concentration.  Annuli shrinking onto the
boundary show that the infimum over domains is zero.
"""

import math

from hypercon.cli import default_candidates
from hypercon.lebesgue import annuli_infimum_demo, escape_demo, lebesgue_min_check, theta1, theta2

s = math.pi / 2
print(f"theta1(s, -0.5) = {theta1(s, -0.5):.10f}   theta2(s, 1) = {theta2(s, 1.0):.10f}")

for alpha in (-0.5, 0.0, 1.0):
    rep = lebesgue_min_check(alpha, s, default_candidates(alpha, s), 64)
    print(f"alpha={alpha:+.1f}: stated minimiser sup R = {rep.minimizer_sup:.6f}, "
          f"constant-function value {rep.constant_bound:.6f}, passes = {rep.passed}")

esc = escape_demo(0.0, r=0.9)
print(f"monomials on D minus D(0, 0.9): R first exceeds {esc.threshold} at n = {esc.first_n_above}")

ann = annuli_infimum_demo(0.0, 1.0, 64)
print("annuli of area 1 at the boundary, sup R for k = 2, 8, 64:",
      [round(ann.sup_R[i], 5) for i in (0, 6, len(ann.sup_R) - 1)])
