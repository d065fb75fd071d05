"""Maximal concentration of wavelet transforms and weighted Bergman functions.

Numerics for the concentration quotient R(f, Omega) on the unit disc, the
comparison envelope theta(s), localisation spectra of domains in the disc
and the upper half-plane, level-set rearrangements and the Lebesgue-measure
variant of the problem.
"""

__version__ = "0.1.0"

from .concentration import c_delta_beta, concentration_ratio, sup_concentration, theta, theta_prime  # noqa: E402

__all__ = ["__version__", "c_delta_beta", "concentration_ratio", "sup_concentration", "theta", "theta_prime"]
