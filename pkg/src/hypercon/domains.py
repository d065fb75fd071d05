"""Measurable subsets of the disc or the half-plane, with quadrature rules.

Every domain can produce a :class:`DomainRule`: complex nodes in the unit
disc with Lebesgue area weights.  Half-plane domains produce the rule of
their Cayley image, so all downstream integrals live on the disc.
Parametric shapes get shape-adapted Gauss rules; :class:`Mask` reuses the
nodes of a :class:`~hypercon.quadrature.DiskGrid` (cell-centre membership).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy import special

from . import geometry as geo
from .quadrature import DiskGrid, build_disk_grid, pairwise_sum

#: half-plane domains reaching below this scale are treated as having divergent nu
S_MIN = 1e-6


class DivergentMeasureError(ValueError):
    pass


@dataclass(frozen=True)
class DomainRule:
    nodes: np.ndarray
    w_leb: np.ndarray

    def __post_init__(self):
        if np.any(np.abs(self.nodes) >= 1):
            raise geo.GeometryError("quadrature node outside the unit disc")

    def weights(self, measure: str, alpha: float = 0.0) -> np.ndarray:
        q = 1.0 - np.abs(self.nodes) ** 2
        if measure == "lebesgue":
            return self.w_leb
        if measure == "alpha":
            return self.w_leb * q ** alpha
        if measure == "hyperbolic":
            return self.w_leb / q ** 2
        raise ValueError(f"unknown measure {measure!r}")

    def integrate(self, values, measure: str = "lebesgue", alpha: float = 0.0):
        return pairwise_sum(np.asarray(values) * self.weights(measure, alpha))

    def __add__(self, other: "DomainRule") -> "DomainRule":
        return DomainRule(np.concatenate([self.nodes, other.nodes]), np.concatenate([self.w_leb, other.w_leb]))


def _gauss_legendre(n: int, a: float, b: float):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (b - a) * x + 0.5 * (a + b), 0.5 * (b - a) * w


def _angles(n: int) -> np.ndarray:
    return 2.0 * math.pi * (np.arange(n) + 0.5) / n


class Domain:
    """Base class.  Subclasses set ``model`` and ``kind``."""

    model = "disc"
    kind = ""
    radial = False

    def rule(self, alpha: float = 0.0) -> DomainRule:  # pragma: no cover - abstract
        raise NotImplementedError

    def to_disc(self) -> "Domain":
        return self

    def hyperbolic_measure(self) -> float:
        """mu for disc-model domains, nu for half-plane domains."""
        return self.rule().integrate(1.0, "hyperbolic")

    def lebesgue_measure(self) -> float:
        return self.rule().integrate(1.0, "lebesgue")

    def contains(self, w) -> np.ndarray:  # pragma: no cover - abstract
        raise NotImplementedError

    def shape_dict(self) -> dict:  # pragma: no cover - abstract
        raise NotImplementedError

    def to_json(self) -> dict:
        return {"model": self.model, "shape": self.shape_dict()}

    def dumps(self) -> str:
        return json.dumps(self.to_json())


# ----------------------------------------------------------------------------
# disc model


@dataclass(frozen=True)
class FullDisc(Domain):
    n_r: int = 128
    n_theta: int = 256
    kind = "full"
    radial = True

    def rule(self, alpha: float = 0.0) -> DomainRule:
        g = build_disk_grid(self.n_r, self.n_theta, alpha)
        return DomainRule(g.nodes, g.w_leb)

    def hyperbolic_measure(self) -> float:
        return math.inf

    def lebesgue_measure(self) -> float:
        return math.pi

    def contains(self, w):
        return np.abs(w) < 1

    def shape_dict(self):
        return {"kind": self.kind}


@dataclass(frozen=True)
class Annulus(Domain):
    """{r_in < |z| < r_out}; ``r_in = 0`` is a centred disc, ``r_out = 1`` reaches the boundary."""

    r_in: float
    r_out: float
    n_rad: int = 96
    n_ang: int = 192
    kind = "annulus"
    radial = True

    def __post_init__(self):
        if not (0.0 <= self.r_in < self.r_out <= 1.0):
            raise geo.GeometryError(f"annulus radii must satisfy 0 <= r_in < r_out <= 1, got {self.r_in}, {self.r_out}")

    def rule(self, alpha: float = 0.0) -> DomainRule:
        u0, u1 = self.r_in ** 2, self.r_out ** 2
        if self.r_out < 1.0:
            u, wu = _gauss_legendre(self.n_rad, u0, u1)
        else:
            # Gauss-Jacobi in u on [u0, 1] for the endpoint singularity (1-u)^alpha
            x, wx = special.roots_jacobi(self.n_rad, alpha, 0.0)
            h = 1.0 - u0
            u = u0 + 0.5 * h * (1.0 + x)
            wu = wx * (0.5 * h) ** (alpha + 1.0) / (1.0 - u) ** alpha
        th = _angles(self.n_ang)
        nodes = (np.sqrt(u)[:, None] * np.exp(1j * th)[None, :]).ravel()
        w = np.repeat(0.5 * wu * 2.0 * math.pi / self.n_ang, self.n_ang)
        return DomainRule(nodes, w)

    def hyperbolic_measure(self) -> float:
        if self.r_out >= 1.0:
            return math.inf
        return math.pi * (1.0 / (1.0 - self.r_out ** 2) - 1.0 / (1.0 - self.r_in ** 2))

    def lebesgue_measure(self) -> float:
        return math.pi * (self.r_out ** 2 - self.r_in ** 2)

    def contains(self, w):
        a = np.abs(w)
        return (a > self.r_in) & (a < self.r_out)

    def shape_dict(self):
        return {"kind": self.kind, "r_in": self.r_in, "r_out": self.r_out}


def centered_disc(r: float) -> Annulus:
    return Annulus(0.0, r)


def centered_disc_of_measure(s: float) -> Annulus:
    return Annulus(0.0, geo.centered_radius_from_measure(s))


def boundary_annulus(r: float) -> Annulus:
    """D minus the closed centred disc of radius r."""
    return Annulus(r, 1.0)


@dataclass(frozen=True)
class EuclideanDisc(Domain):
    """Euclidean disc {|z - center| < radius}, strictly inside D."""

    center: complex
    radius: float
    n_rad: int = 96
    n_ang: int = 192
    kind = "euclidean_disc"

    def __post_init__(self):
        if not (self.radius > 0 and abs(self.center) + self.radius < 1.0):
            raise geo.GeometryError("Euclidean disc must lie strictly inside D")

    def rule(self, alpha: float = 0.0) -> DomainRule:
        rho, wr = _gauss_legendre(self.n_rad, 0.0, self.radius)
        th = _angles(self.n_ang)
        nodes = (self.center + rho[:, None] * np.exp(1j * th)[None, :]).ravel()
        w = np.repeat(wr * rho * 2.0 * math.pi / self.n_ang, self.n_ang)
        return DomainRule(nodes, w)

    @property
    def pseudohyperbolic(self) -> geo.PseudoHyperbolicDisc:
        """The same set described by hyperbolic centre and measure."""
        c, rho = complex(self.center), self.radius
        # radial slice through the centre: endpoints map to a symmetric pair under phi_{-w}
        d = abs(c)
        e = c / d if d > 0 else 1.0
        a, b = d - rho, d + rho
        # hyperbolic midpoint t in (-1,1) of segment [a, b]:  phi_{-t}(a) = -phi_{-t}(b)
        # (a - t)/(1 - t a) = -(b - t)/(1 - t b)  ->  quadratic in t
        A = a + b
        B = -2.0 * (1.0 + a * b)
        C = a + b
        if abs(A) < 1e-15:
            t = 0.0
        else:
            t = (-B - math.sqrt(B * B - 4 * A * C)) / (2 * A)
        w = t * e
        r = abs((b - t) / (1 - t * b))
        return geo.disc_from_measure(w, geo.centered_disc_measure(r), "disc")

    def hyperbolic_measure(self) -> float:
        return self.pseudohyperbolic.measure

    def lebesgue_measure(self) -> float:
        return math.pi * self.radius ** 2

    def contains(self, w):
        return np.abs(np.asarray(w) - self.center) < self.radius

    def shape_dict(self):
        return {"kind": self.kind, "center": [self.center.real, self.center.imag], "radius": self.radius}


@dataclass(frozen=True)
class PHDisc(Domain):
    """Pseudohyperbolic disc given by hyperbolic centre and hyperbolic measure."""

    center: complex
    measure: float
    model: str = "disc"
    n_rad: int = 96
    n_ang: int = 192
    kind = "phdisc"

    @cached_property
    def disc(self) -> geo.PseudoHyperbolicDisc:
        return geo.disc_from_measure(self.center, self.measure, self.model)

    def to_disc(self) -> "PHDisc":
        if self.model == "disc":
            return self
        d = self.disc.to_disc()
        return PHDisc(d.center, d.measure, "disc", self.n_rad, self.n_ang)

    def euclidean(self) -> EuclideanDisc:
        d = self.disc.to_disc()
        return EuclideanDisc(d.euclidean_center, d.euclidean_radius, self.n_rad, self.n_ang)

    def rule(self, alpha: float = 0.0) -> DomainRule:
        return self.euclidean().rule(alpha)

    def hyperbolic_measure(self) -> float:
        return self.measure

    def lebesgue_measure(self) -> float:
        return self.euclidean().lebesgue_measure()

    def contains(self, p):
        return self.disc.contains(p)

    def tau(self, w) -> "PHDisc":
        if self.model != "halfplane":
            raise geo.GeometryError("tau acts on half-plane domains")
        return PHDisc(complex(geo.tau_action(w, self.center)), self.measure, "halfplane", self.n_rad, self.n_ang)

    def shape_dict(self):
        return {"kind": self.kind, "center": [self.center.real, self.center.imag], "measure": self.measure}


@dataclass(frozen=True)
class Polygon(Domain):
    """Convex polygon with vertices inside D, integrated by collapsed Gauss rules on a fan."""

    vertices: tuple
    order: int = 48
    kind = "polygon"

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=complex)
        if v.size < 3 or np.any(np.abs(v) >= 1):
            raise geo.GeometryError("polygon needs >= 3 vertices inside D")

    @property
    def _v(self) -> np.ndarray:
        return np.asarray(self.vertices, dtype=complex)

    def rule(self, alpha: float = 0.0) -> DomainRule:
        v = self._v
        c = v.mean()
        xi, wxi = _gauss_legendre(self.order, 0.0, 1.0)
        X, Y = np.meshgrid(xi, xi, indexing="ij")
        WW = np.outer(wxi, wxi)
        nodes, weights = [], []
        for a, b in zip(v, np.roll(v, -1)):
            # collapse the square onto triangle (c, a, b)
            p = c + X * (a - c) + X * Y * (b - a)
            area2 = abs(((a - c).conjugate() * (b - a)).imag)
            nodes.append(p.ravel())
            weights.append((WW * X * area2).ravel())
        return DomainRule(np.concatenate(nodes), np.concatenate(weights))

    def lebesgue_measure(self) -> float:
        v = self._v
        return 0.5 * abs(np.sum((v.conjugate() * np.roll(v, -1)).imag))

    def contains(self, w):
        w = np.asarray(w, dtype=complex)
        v = self._v
        orient = np.sign(np.sum((v.conjugate() * np.roll(v, -1)).imag))
        inside = np.ones(w.shape, dtype=bool)
        for a, b in zip(v, np.roll(v, -1)):
            inside &= orient * ((b - a).conjugate() * (w - a)).imag > 0
        return inside

    def shape_dict(self):
        return {"kind": self.kind, "vertices": [[z.real, z.imag] for z in self._v]}


@dataclass(frozen=True)
class Union(Domain):
    """Disjoint union of disc-model domains."""

    parts: tuple
    kind = "union"

    def rule(self, alpha: float = 0.0) -> DomainRule:
        rules = [p.rule(alpha) for p in self.parts]
        out = rules[0]
        for r in rules[1:]:
            out = out + r
        return out

    def hyperbolic_measure(self) -> float:
        return math.fsum(p.hyperbolic_measure() for p in self.parts)

    def lebesgue_measure(self) -> float:
        return math.fsum(p.lebesgue_measure() for p in self.parts)

    def contains(self, w):
        out = np.zeros(np.shape(w), dtype=bool)
        for p in self.parts:
            out |= p.contains(w)
        return out

    def shape_dict(self):
        return {"kind": self.kind, "parts": [p.shape_dict() for p in self.parts]}


@dataclass(frozen=True, eq=False)
class Mask(Domain):
    """Indicator of a subset of the nodes of a disc grid."""

    grid: DiskGrid
    mask: np.ndarray = field(repr=False)
    kind = "mask"

    def __post_init__(self):
        m = np.asarray(self.mask, dtype=bool).ravel()
        if m.size != self.grid.size:
            raise ValueError(f"mask length {m.size} does not match grid size {self.grid.size}")
        object.__setattr__(self, "mask", m)

    @classmethod
    def from_domain(cls, grid: DiskGrid, dom: Domain) -> "Mask":
        dom = dom.to_disc()
        return cls(grid, dom.contains(grid.nodes))

    def rule(self, alpha: float = 0.0) -> DomainRule:
        return DomainRule(self.grid.nodes[self.mask], self.grid.w_leb[self.mask])

    def hyperbolic_measure(self) -> float:
        return pairwise_sum(np.where(self.mask, self.grid.w_hyp, 0.0))

    def lebesgue_measure(self) -> float:
        return pairwise_sum(np.where(self.mask, self.grid.w_leb, 0.0))

    def contains(self, w):
        raise NotImplementedError("masks are defined only on their grid nodes")

    def shape_dict(self):
        g = self.grid
        return {
            "kind": self.kind,
            "n_r": g.n_r,
            "n_theta": g.n_theta,
            "alpha": g.alpha,
            "indices": np.flatnonzero(self.mask).tolist(),
        }


# ----------------------------------------------------------------------------
# half-plane model


@dataclass(frozen=True)
class Rectangle(Domain):
    """[x0, x1] x [s0, s1] in the upper half-plane."""

    x0: float
    x1: float
    s0: float
    s1: float
    n_x: int = 64
    n_s: int = 64
    x_panels: int = 1
    model = "halfplane"
    kind = "rectangle"

    def __post_init__(self):
        if not (self.x0 < self.x1 and 0 <= self.s0 < self.s1):
            raise geo.GeometryError("rectangle needs x0 < x1 and 0 <= s0 < s1")

    def _check_finite(self):
        if self.s0 < S_MIN:
            raise DivergentMeasureError(f"rectangle reaches s={self.s0} below the floor {S_MIN}; nu diverges")

    def rule(self, alpha: float = 0.0) -> DomainRule:
        self._check_finite()
        edges = np.linspace(self.x0, self.x1, self.x_panels + 1)
        xs, wxs = zip(*(_gauss_legendre(self.n_x, a, b) for a, b in zip(edges[:-1], edges[1:])))
        x, wx = np.concatenate(xs), np.concatenate(wxs)
        # log-scale substitution s = exp(sigma) in the vertical direction
        sig, wsig = _gauss_legendre(self.n_s, math.log(self.s0), math.log(self.s1))
        s = np.exp(sig)
        z = (x[:, None] + 1j * s[None, :]).ravel()
        w = (wx[:, None] * (wsig * s)[None, :]).ravel()
        return DomainRule(geo.cayley_to_disk(z), w * geo.cayley_jacobian(z))

    def nu(self) -> float:
        self._check_finite()
        return (self.x1 - self.x0) * (1.0 / self.s0 - 1.0 / self.s1)

    def hyperbolic_measure(self) -> float:
        return self.nu()

    def contains(self, z):
        z = np.asarray(z)
        return (z.real > self.x0) & (z.real < self.x1) & (z.imag > self.s0) & (z.imag < self.s1)

    def to_disc(self) -> "CayleyImage":
        return CayleyImage(self)

    def tau(self, w) -> "Rectangle":
        w = complex(w)
        x1, s1 = w.real, w.imag
        return Rectangle((self.x0 - x1) / s1, (self.x1 - x1) / s1, self.s0 / s1, self.s1 / s1,
                         self.n_x, self.n_s, self.x_panels)

    def reflect(self) -> "Rectangle":
        return Rectangle(-self.x1, -self.x0, self.s0, self.s1, self.n_x, self.n_s, self.x_panels)

    def shape_dict(self):
        return {"kind": self.kind, "x0": self.x0, "x1": self.x1, "s0": self.s0, "s1": self.s1}


@dataclass(frozen=True)
class CayleyImage(Domain):
    """Disc-model image of a half-plane domain under z -> (z - i)/(z + i)."""

    source: Domain

    @property
    def kind(self):
        return "cayley_image"

    def rule(self, alpha: float = 0.0) -> DomainRule:
        return self.source.rule(alpha)

    def hyperbolic_measure(self) -> float:
        return self.source.hyperbolic_measure() / 4.0

    def contains(self, w):
        w = np.asarray(w, dtype=complex)
        out = np.zeros(w.shape, dtype=bool)
        ok = np.abs(w) < 1
        out[ok] = self.source.contains(geo.cayley_to_halfplane(w[ok]))
        return out

    def shape_dict(self):
        return {"kind": self.kind, "source": self.source.to_json()}


# ----------------------------------------------------------------------------
# construction helpers and JSON


def rescale_to_measure(factory, target: float, lo: float, hi: float, measure: str = "hyperbolic",
                       tol: float = 1e-10, maxiter: int = 200) -> Domain:
    """Bisect a size parameter so that ``factory(t)`` has the target measure.

    The measure is assumed increasing in ``t`` on ``[lo, hi]``.
    """
    def m(t):
        d = factory(t)
        return d.hyperbolic_measure() if measure == "hyperbolic" else d.lebesgue_measure()

    f_lo, f_hi = m(lo) - target, m(hi) - target
    if f_lo > 0 or f_hi < 0:
        raise ValueError(f"target measure {target} not bracketed by [{lo}, {hi}]")
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        if m(mid) < target:
            lo = mid
        else:
            hi = mid
        if hi - lo < tol * max(1.0, abs(hi)):
            break
    return factory(0.5 * (lo + hi))


def hyperbolic_measure(dom: Domain, grid: DiskGrid | None = None) -> float:
    """mu (disc model) or nu (half-plane); masks use their own grid, parametric shapes their own rule."""
    if grid is not None and not isinstance(dom, Mask):
        return Mask.from_domain(grid, dom).hyperbolic_measure() * (4.0 if dom.model == "halfplane" else 1.0)
    return dom.hyperbolic_measure()


def _c(pair) -> complex:
    return complex(pair[0], pair[1])


def shape_from_dict(model: str, d: dict) -> Domain:
    kind = d.get("kind")
    if model == "disc":
        if kind == "full":
            return FullDisc()
        if kind == "centered_disc":
            if "measure" in d:
                return centered_disc_of_measure(float(d["measure"]))
            return centered_disc(float(d["r"]))
        if kind == "annulus":
            return Annulus(float(d["r_in"]), float(d["r_out"]))
        if kind == "boundary_annulus":
            return boundary_annulus(float(d["r"]))
        if kind == "euclidean_disc":
            return EuclideanDisc(_c(d["center"]), float(d["radius"]))
        if kind == "phdisc":
            return PHDisc(_c(d["center"]), float(d["measure"]), "disc")
        if kind == "polygon":
            return Polygon(tuple(_c(v) for v in d["vertices"]))
        if kind == "union":
            return Union(tuple(shape_from_dict("disc", p) for p in d["parts"]))
        if kind == "mask":
            g = build_disk_grid(int(d["n_r"]), int(d["n_theta"]), float(d.get("alpha", 0.0)))
            m = np.zeros(g.size, dtype=bool)
            m[np.asarray(d["indices"], dtype=int)] = True
            return Mask(g, m)
        if kind == "cayley_image":
            return CayleyImage(domain_from_json(d["source"]))
    elif model == "halfplane":
        if kind == "rectangle":
            return Rectangle(float(d["x0"]), float(d["x1"]), float(d["s0"]), float(d["s1"]))
        if kind == "phdisc":
            return PHDisc(_c(d["center"]), float(d["measure"]), "halfplane")
    raise ValueError(f"unknown shape kind {kind!r} for model {model!r}")


def domain_from_json(obj) -> Domain:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        model = obj["model"]
        shape = obj["shape"]
    except (KeyError, TypeError) as exc:
        raise ValueError("domain JSON needs 'model' and 'shape'") from exc
    if model not in ("disc", "halfplane"):
        raise ValueError(f"unknown model {model!r}")
    return shape_from_dict(model, shape)
