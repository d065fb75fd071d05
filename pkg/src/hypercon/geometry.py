"""Upper half-plane and unit disc models of the hyperbolic plane.

Points are handled as Python/numpy complex numbers throughout; the small
dataclasses below exist to validate single points at API boundaries.
Half-plane points are ``x + i s`` with ``s > 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class HalfPlanePoint:
    x: float
    s: float

    def __post_init__(self):
        if not self.s > 0:
            raise GeometryError(f"half-plane point needs s > 0, got {self.s}")

    @property
    def z(self) -> complex:
        return complex(self.x, self.s)

    @classmethod
    def from_complex(cls, z: complex) -> "HalfPlanePoint":
        return cls(float(np.real(z)), float(np.imag(z)))


@dataclass(frozen=True)
class DiskPoint:
    re: float
    im: float

    def __post_init__(self):
        if not self.re * self.re + self.im * self.im < 1.0:
            raise GeometryError(f"disc point must satisfy |w| < 1, got {complex(self.re, self.im)}")

    @property
    def z(self) -> complex:
        return complex(self.re, self.im)

    @classmethod
    def from_complex(cls, w: complex) -> "DiskPoint":
        return cls(float(np.real(w)), float(np.imag(w)))


def _as_complex(p):
    if isinstance(p, (HalfPlanePoint, DiskPoint)):
        return p.z
    return np.asarray(p, dtype=complex) if np.ndim(p) else complex(p)


def cayley_to_disk(z):
    """w = (z - i) / (z + i)."""
    z = _as_complex(z)
    if np.any(np.imag(z) <= 0):
        raise GeometryError("cayley_to_disk needs Im z > 0")
    return (z - 1j) / (z + 1j)


def cayley_to_halfplane(w):
    """z = (w + 1) / (i (w - 1)), the inverse of :func:`cayley_to_disk`."""
    w = _as_complex(w)
    if np.any(np.abs(w) >= 1):
        raise GeometryError("cayley_to_halfplane needs |w| < 1")
    return (w + 1) / (1j * (w - 1))


def cayley_jacobian(z):
    """Area Jacobian |dw/dz|**2 = 4 / |z + i|**4 of the map to the disc."""
    return 4.0 / np.abs(_as_complex(z) + 1j) ** 4


def pseudohyperbolic_distance(a, b, model: str = "disc"):
    a, b = _as_complex(a), _as_complex(b)
    if model == "disc":
        if np.any(np.abs(a) >= 1) or np.any(np.abs(b) >= 1):
            raise GeometryError("disc points must lie in |w| < 1")
        return np.abs((a - b) / (1 - np.conj(b) * a))
    if model == "halfplane":
        if np.any(np.imag(a) <= 0) or np.any(np.imag(b) <= 0):
            raise GeometryError("half-plane points must have Im > 0")
        return np.abs((a - b) / (a - np.conj(b)))
    raise GeometryError(f"unknown model {model!r}")


def disc_automorphism(w, zeta):
    """phi_w(zeta) = (zeta + w) / (1 + conj(w) zeta); sends 0 to w."""
    w, zeta = _as_complex(w), _as_complex(zeta)
    return (zeta + w) / (1 + np.conj(w) * zeta)


def tau_action(w, z):
    """Affine map z -> ((x - x1)/s1, s/s1) for w = x1 + i s1."""
    w, z = _as_complex(w), _as_complex(z)
    return (z - np.real(w)) / np.imag(w)


def tau_inverse(w, z):
    w, z = _as_complex(w), _as_complex(z)
    return z * np.imag(w) + np.real(w)


def centered_radius_from_measure(s: float) -> float:
    """Euclidean radius r of the centred disc with mu(B_r) = s."""
    if s < 0:
        raise GeometryError("measure must be nonnegative")
    return math.sqrt(s / (math.pi + s))


def centered_disc_measure(r: float) -> float:
    """mu(B_r) = pi (1/(1 - r^2) - 1)."""
    return math.pi * r * r / (1.0 - r * r)


@dataclass(frozen=True)
class PseudoHyperbolicDisc:
    """Pseudohyperbolic ball of prescribed hyperbolic measure.

    ``measure`` is mu for the disc model and nu (= 4 mu) for the half-plane
    model.  ``radius`` is the pseudohyperbolic radius, shared by both models.
    """

    model: str
    center: complex
    measure: float

    def __post_init__(self):
        if not self.measure > 0:
            raise GeometryError("disc measure must be positive")
        if self.model == "disc":
            if abs(self.center) >= 1:
                raise GeometryError("hyperbolic centre must lie in the disc")
        elif self.model == "halfplane":
            if not np.imag(self.center) > 0:
                raise GeometryError("hyperbolic centre must lie in the half-plane")
        else:
            raise GeometryError(f"unknown model {self.model!r}")

    @property
    def disc_measure(self) -> float:
        return self.measure if self.model == "disc" else self.measure / 4.0

    @property
    def radius(self) -> float:
        return centered_radius_from_measure(self.disc_measure)

    @property
    def euclidean_center(self) -> complex:
        r2 = self.radius ** 2
        c = complex(self.center)
        if self.model == "disc":
            return c * (1 - r2) / (1 - r2 * abs(c) ** 2)
        return complex(c.real, c.imag * (1 + r2) / (1 - r2))

    @property
    def euclidean_radius(self) -> float:
        r = self.radius
        c = complex(self.center)
        if self.model == "disc":
            return r * (1 - abs(c) ** 2) / (1 - r * r * abs(c) ** 2)
        return 2 * r * c.imag / (1 - r * r)

    def to_disc(self) -> "PseudoHyperbolicDisc":
        if self.model == "disc":
            return self
        return PseudoHyperbolicDisc("disc", complex(cayley_to_disk(self.center)), self.disc_measure)

    def contains(self, p) -> np.ndarray:
        return pseudohyperbolic_distance(p, self.center, self.model) < self.radius


def disc_from_measure(center, s: float, model: str = "disc") -> PseudoHyperbolicDisc:
    """Pseudohyperbolic disc with hyperbolic centre ``center`` and measure ``s``."""
    return PseudoHyperbolicDisc(model, complex(_as_complex(center)), float(s))
