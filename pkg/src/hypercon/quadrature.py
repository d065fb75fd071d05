"""Deterministic tensor quadrature on the disc and the positive frequency axis.

Disc grids are polar: Gauss-Jacobi in ``u = r**2`` with weight
``(1 - u)**alpha`` and the trapezoidal rule in angle.  With ``n_r`` radial
nodes this integrates ``z**m * conj(z)**n * (1 - |z|**2)**alpha`` exactly
whenever ``max(m, n) <= 2 n_r - 1`` and ``|m - n| < n_theta``.

Frequency grids are generalized Gauss-Laguerre rules for the weight
``t**a * exp(-rate * t)`` on ``(0, inf)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from .specfun import DomainError

DEFAULT_NR = 256
DEFAULT_NTHETA = 512

MEASURES = ("lebesgue", "alpha", "hyperbolic")


def pairwise_sum(values) -> complex | float:
    """Sum along a fixed binary tree, independent of numpy's internal blocking."""
    v = np.asarray(values).ravel()
    if v.size == 0:
        return v.dtype.type(0)
    size = 1 << (v.size - 1).bit_length()
    buf = np.zeros(size, dtype=v.dtype)
    buf[: v.size] = v
    while size > 1:
        size //= 2
        buf = buf[:size] + buf[size : 2 * size]
    return buf[0].item()


@dataclass(frozen=True)
class DiskGrid:
    n_r: int
    n_theta: int
    alpha: float
    u: np.ndarray = field(repr=False)         # radial nodes in r**2, ascending
    w_alpha: np.ndarray = field(repr=False)   # per node, weight for (1-|z|^2)^alpha dz
    theta: np.ndarray = field(repr=False)

    @property
    def r(self) -> np.ndarray:
        return np.sqrt(self.u)

    @property
    def size(self) -> int:
        return self.n_r * self.n_theta

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_r, self.n_theta)

    @property
    def nodes(self) -> np.ndarray:
        """Flattened complex nodes, radial index major."""
        return (self.r[:, None] * np.exp(1j * self.theta)[None, :]).ravel()

    @property
    def one_minus_r2(self) -> np.ndarray:
        return np.repeat(1.0 - self.u, self.n_theta)

    @property
    def w_leb(self) -> np.ndarray:
        return self.w_alpha / self.one_minus_r2 ** self.alpha

    @property
    def w_hyp(self) -> np.ndarray:
        return self.w_leb / self.one_minus_r2 ** 2

    def weights(self, measure: str) -> np.ndarray:
        if measure == "lebesgue":
            return self.w_leb
        if measure == "alpha":
            return self.w_alpha
        if measure == "hyperbolic":
            return self.w_hyp
        raise ValueError(f"unknown measure {measure!r}; expected one of {MEASURES}")

    @property
    def lebesgue_truncation(self) -> float:
        """Relative defect of the grid's total Lebesgue mass against pi."""
        return 1.0 - pairwise_sum(self.w_leb) / math.pi

    @property
    def exactness_degree(self) -> int:
        """Largest n with z**n conj(z)**n (1-|z|^2)**alpha integrated exactly."""
        return 2 * self.n_r - 1


def build_disk_grid(n_r: int = DEFAULT_NR, n_theta: int = DEFAULT_NTHETA, alpha: float = 0.0) -> DiskGrid:
    if n_r < 4 or n_theta < 4:
        raise DomainError("disc grid needs n_r, n_theta >= 4")
    if not alpha > -1:
        raise DomainError(f"alpha must exceed -1, got {alpha}")
    x, wx = special.roots_jacobi(n_r, alpha, 0.0)
    u = 0.5 * (1.0 + x)
    # int_0^1 g(u) (1-u)^alpha du = 2^(-alpha-1) sum wx g(u); dz = du dtheta / 2
    wu = wx * 2.0 ** (-alpha - 1.0) * 0.5
    theta = 2.0 * math.pi * np.arange(n_theta) / n_theta
    w_alpha = np.repeat(wu * (2.0 * math.pi / n_theta), n_theta)
    return DiskGrid(n_r, n_theta, float(alpha), u, w_alpha, theta)


@dataclass(frozen=True)
class FrequencyGrid:
    """Gauss rule for ``int_0^inf g(t) t**a exp(-rate t) dt``."""

    a: float
    N: int
    rate: float
    t: np.ndarray = field(repr=False)
    v: np.ndarray = field(repr=False)

    def with_rate(self, rate: float) -> "FrequencyGrid":
        """Same rule rescaled to the weight ``t**a exp(-rate t)``."""
        if not rate > 0:
            raise DomainError("rate must be positive")
        k = self.rate / rate
        return FrequencyGrid(self.a, self.N, float(rate), self.t * k, self.v * k ** (self.a + 1.0))

    def weight(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return t ** self.a * np.exp(-self.rate * t)


def build_frequency_grid(a: float, N: int, rate: float = 2.0) -> FrequencyGrid:
    if N < 8:
        raise DomainError("frequency grid needs N >= 8")
    if not a > -1:
        raise DomainError(f"exponent a must exceed -1, got {a}")
    x, wx = special.roots_genlaguerre(N, a)
    return FrequencyGrid(float(a), int(N), float(rate), x / rate, wx * rate ** (-a - 1.0))


def integrate(values, grid, measure: str = "lebesgue", mask=None):
    """Weighted node sum with a fixed reduction order.

    For a :class:`DiskGrid` the weight is chosen by ``measure``; ``mask``
    restricts the sum to selected nodes.  For a :class:`FrequencyGrid` the
    values are the integrand divided by the rule's weight function.
    """
    values = np.asarray(values)
    if isinstance(grid, FrequencyGrid):
        if values.shape != grid.t.shape:
            raise ValueError(f"values shape {values.shape} does not match grid ({grid.N},)")
        return pairwise_sum(values * grid.v)
    if values.size != grid.size:
        raise ValueError(f"values size {values.size} does not match grid size {grid.size}")
    w = grid.weights(measure)
    terms = values.ravel() * w
    if mask is not None:
        mask = np.asarray(mask, dtype=bool).ravel()
        if mask.size != grid.size:
            raise ValueError("mask size does not match grid")
        terms = np.where(mask, terms, 0)
    return pairwise_sum(terms)
