"""Level sets of u = |f|^2 (1 - |z|^2)^(alpha+2) and the isoperimetric step.

The mass of the decreasing rearrangement never exceeds theta, with equality
for reproducing kernels.  The hyperbolic perimeter of every superlevel curve
obeys L^2 >= 4 pi s + 4 s^2.
"""

import numpy as np

from hypercon import theta
from hypercon.bergman import KernelSpecDisc, kernel_disc
from hypercon.concentration import random_unit_function
from hypercon.quadrature import build_disk_grid
from hypercon.rearrangement import isoperimetric_audit, level_profile, u_function, u_profile

alpha = 0.0
grid = build_disk_grid(256, 512, alpha)
s = np.array([0.5, 1.0, 2.0, 4.0, 8.0])

k, _ = kernel_disc(KernelSpecDisc(alpha, 0.3 + 0.2j), 64)
f = random_unit_function(24, alpha, np.random.default_rng(0))
for name, g in (("kernel", k), ("random", f)):
    prof = level_profile(u_profile(g, grid), grid)
    print(f"{name:7s} I(s)     =", np.round(prof.I(s), 6))
    print(f"{'':7s} theta(s) =", np.round(theta(s, alpha), 6))
    for row in isoperimetric_audit(u_function(g), prof, [1.0, 4.0], 1024):
        print(f"{'':7s} s={row.s:<4} L^2 / (4 pi s + 4 s^2) = {row.ratio:.5f}")
