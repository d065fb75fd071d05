"""From wavelet transforms in H^2(C+) to Bergman spaces of the disc.

The wavelet transform with the power-law window lands in a weighted Bergman
space of the upper half-plane, and the Cayley map carries the Laguerre-type
eigenfunctions onto the monomial basis of the disc.
"""

import numpy as np

from hypercon.bergman import basis_values, t_alpha_map
from hypercon.concentration import c_delta_beta
from hypercon.domains import Rectangle
from hypercon.wavelet import bergman_transform, calibrate_unitarity, eigenfunction_psi

alpha = 0.0
beta = (alpha + 1) / 2

cal = calibrate_unitarity(alpha)
print(f"kappa_T = {cal.kappa_T:.12f}  kappa_B = {cal.kappa_B:.12f}  product = {cal.kappa:.12f}")

# T(B psi_n) is a fixed multiple of the n-th monomial basis vector.
z = np.array([0.4 + 0.1j, -0.2 + 0.5j, 0.6j])
for n in range(4):
    ratio = t_alpha_map(bergman_transform(eigenfunction_psi(n, alpha)), alpha)(z) / basis_values(z, n + 1, alpha)[:, n]
    print(f"n={n}: T(B psi_n) / e_n =", np.round(ratio, 12))

# The wavelet concentration constant of a time-scale rectangle is invariant
# under the affine group; the basis is enlarged until the value is converged.
box = Rectangle(-0.5, 0.5, 0.5, 2.0)
a = c_delta_beta(box, beta, None)
b = c_delta_beta(box.tau(1.3 + 0.7j), beta, None)
print(f"C(box) = {a.R:.10f}  C(tau box) = {b.R:.10f}  theta(s) = {a.theta:.10f}")
