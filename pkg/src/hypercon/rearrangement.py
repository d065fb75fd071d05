"""Hyperbolic rearrangement of u(z) = |f(z)|^2 (1-|z|^2)^(alpha+2).

Distribution function rho(t) = mu({u > t}), decreasing rearrangement u*
and the envelope I(s) = int_{u > u*(s)} u dmu are computed by sorting grid
nodes by u (ties broken by node index) and accumulating hyperbolic weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bergman import BergmanFunctionDisc
from .domains import Mask
from .quadrature import DiskGrid


def u_profile(f: BergmanFunctionDisc, grid: DiskGrid) -> np.ndarray:
    """Node samples of u for the normalised f."""
    f = f.normalized()
    return np.abs(f(grid.nodes)) ** 2 * grid.one_minus_r2 ** (f.alpha + 2.0)


def u_function(f: BergmanFunctionDisc):
    f = f.normalized()

    def u(z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape)
        inside = np.abs(z) < 1
        out[inside] = np.abs(f(z[inside])) ** 2 * (1.0 - np.abs(z[inside]) ** 2) ** (f.alpha + 2.0)
        return out

    return u


@dataclass(frozen=True, eq=False)
class LevelProfile:
    """Exact (sorted) level-set data of a node-sampled field.

    ``u_sorted`` is nonincreasing, ``S`` and ``I_cum`` are cumulative
    hyperbolic measure and cumulative u-mass along that order, both with
    a leading zero.
    """

    order: np.ndarray = field(repr=False)
    u_sorted: np.ndarray = field(repr=False)
    S: np.ndarray = field(repr=False)
    I_cum: np.ndarray = field(repr=False)

    @property
    def total_measure(self) -> float:
        return float(self.S[-1])

    @property
    def total_mass(self) -> float:
        return float(self.I_cum[-1])

    def rho(self, t):
        """mu({u > t})."""
        t = np.asarray(t, dtype=float)
        # number of sorted samples strictly above t
        k = np.searchsorted(-self.u_sorted, -t, side="left")
        return self.S[k]

    def _index(self, s):
        s = np.asarray(s, dtype=float)
        if np.any(s < 0) or np.any(s > self.S[-1]):
            raise ValueError("s outside [0, total measure]")
        k = np.searchsorted(self.S, s, side="right") - 1
        return np.clip(k, 0, self.u_sorted.size - 1)

    def ustar(self, s):
        """Right-continuous step inverse of rho."""
        return self.u_sorted[self._index(s)]

    def I(self, s):
        """int_0^s u*(sigma) dsigma, piecewise linear between breakpoints."""
        s = np.asarray(s, dtype=float)
        k = self._index(s)
        return self.I_cum[k] + self.u_sorted[k] * (s - self.S[k])

    def sample(self, s_values) -> dict:
        s_values = np.asarray(s_values, dtype=float)
        return {"s": s_values, "ustar": self.ustar(s_values), "I": self.I(s_values)}

    def thresholds(self, n_levels: int) -> dict:
        """rho sampled at ``n_levels`` thresholds spread over the range of u."""
        t = np.linspace(self.u_sorted[0], 0.0, n_levels, endpoint=False)
        return {"t": t, "rho": self.rho(t)}

    def to_json(self, s_values, n_levels: int = 50) -> dict:
        smp = self.sample(s_values)
        th = self.thresholds(n_levels)
        return {
            "thresholds": th["t"].tolist(), "rho": th["rho"].tolist(),
            "s": smp["s"].tolist(), "ustar": smp["ustar"].tolist(), "envelope": smp["I"].tolist(),
            "total_mass": self.total_mass,
        }


def level_profile(u: np.ndarray, grid: DiskGrid) -> LevelProfile:
    u = np.asarray(u, dtype=float).ravel()
    if u.size != grid.size:
        raise ValueError("field does not match grid")
    order = np.lexsort((np.arange(u.size), -u))
    us = u[order]
    w = grid.w_hyp[order]
    S = np.concatenate([[0.0], np.cumsum(w)])
    I_cum = np.concatenate([[0.0], np.cumsum(us * w)])
    return LevelProfile(order, us, S, I_cum)


def superlevel_domain(u: np.ndarray, grid: DiskGrid, s: float, profile: LevelProfile | None = None) -> Mask:
    """Mask of the nodes with the largest u whose hyperbolic weights add up to about s."""
    profile = level_profile(u, grid) if profile is None else profile
    if not (0 < s < profile.total_measure):
        raise ValueError(f"s={s} outside (0, {profile.total_measure})")
    # include node k when the measure before it is below s and more than half of it fits
    S = profile.S
    k = int(np.searchsorted(S, s, side="right") - 1)
    if k < profile.u_sorted.size and s - S[k] > 0.5 * (S[k + 1] - S[k]):
        k += 1
    mask = np.zeros(grid.size, dtype=bool)
    mask[profile.order[:k]] = True
    return Mask(grid, mask)


# ----------------------------------------------------------------------------
# isoperimetric audit


def hyperbolic_length(path: np.ndarray) -> float:
    """Length of a polyline of complex points in the metric |dz| / (1 - |z|^2)."""
    d = np.abs(np.diff(path))
    mid = 0.5 * (path[1:] + path[:-1])
    return float(np.sum(d / (1.0 - np.abs(mid) ** 2)))


def level_curves(u_func, level: float, n_pix: int = 1024):
    """Closed level curves {u = level} traced by marching squares on a Cartesian raster."""
    from skimage import measure

    ax = np.linspace(-1.0, 1.0, n_pix)
    X, Y = np.meshgrid(ax, ax, indexing="ij")
    Z = X + 1j * Y
    vals = u_func(Z)
    h = ax[1] - ax[0]
    out = []
    for c in measure.find_contours(vals, level):
        out.append((-1.0 + c[:, 0] * h) + 1j * (-1.0 + c[:, 1] * h))
    return out


@dataclass
class AuditRow:
    s: float
    level: float
    length: float
    bound: float
    n_curves: int
    note: str = ""

    @property
    def ratio(self) -> float:
        return self.length ** 2 / self.bound if self.bound > 0 else math.nan

    @property
    def margin(self) -> float:
        """L^2 - (4 pi s + 4 s^2), relative to the bound."""
        return self.ratio - 1.0


def isoperimetric_audit(u_func, profile: LevelProfile, s_values, n_pix: int = 1024) -> list[AuditRow]:
    """Hyperbolic length of the boundary of {u > u*(s)} against sqrt(4 pi s + 4 s^2)."""
    rows = []
    for s in np.asarray(s_values, dtype=float):
        t = float(profile.ustar(s))
        bound = 4.0 * math.pi * s + 4.0 * s * s
        curves = [c for c in level_curves(u_func, t, n_pix) if c.size > 3]
        if not curves or t <= 0:
            rows.append(AuditRow(float(s), t, math.nan, bound, 0, "no contour at this level; skipped"))
            continue
        L = sum(hyperbolic_length(c) for c in curves)
        rows.append(AuditRow(float(s), t, L, bound, len(curves)))
    return rows
