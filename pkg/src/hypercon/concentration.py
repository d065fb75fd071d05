"""Concentration quotients, the comparison envelope and maximal concentration."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import geometry as geo
from .bergman import (
    DEFAULT_BASIS,
    BergmanFunctionDisc,
    KernelSpecDisc,
    UsageError,
    kernel_disc,
    toeplitz_matrix,
    top_eigenpair,
)
from .domains import (
    Annulus,
    CayleyImage,
    DivergentMeasureError,
    Domain,
    EuclideanDisc,
    Mask,
    PHDisc,
    Rectangle,
    Union,
    rescale_to_measure,
)
from .quadrature import DiskGrid


def theta(s, alpha: float):
    """theta(s) = 1 - (1 + s/pi)**(-1-alpha): largest possible R(f, Omega) with mu(Omega) = s."""
    s = np.asarray(s, dtype=float)
    if np.any(s < 0):
        raise ValueError("theta needs s >= 0")
    out = -np.expm1(-(1.0 + alpha) * np.log1p(s / math.pi))
    return float(out) if out.ndim == 0 else out


def theta_prime(s, alpha: float):
    s = np.asarray(s, dtype=float)
    out = (1.0 + alpha) / math.pi * (1.0 + s / math.pi) ** (-2.0 - alpha)
    return float(out) if out.ndim == 0 else out


def concentration_ratio(f: BergmanFunctionDisc, dom: Domain, grid: DiskGrid | None = None) -> float:
    """R(f, Omega) = int_Omega |f|^2 (1-|z|^2)^alpha dz / ||f||^2.

    Parametric domains use their own rule; a grid turns them into a mask first.
    """
    nrm2 = f.norm() ** 2
    if nrm2 == 0:
        raise UsageError("R(f, Omega) is undefined for f = 0")
    disc = dom.to_disc()
    if grid is not None and not isinstance(disc, Mask):
        disc = Mask.from_domain(grid, disc)
    rule = disc.rule(f.alpha)
    vals = np.abs(f(rule.nodes)) ** 2
    return float(rule.integrate(vals, "alpha", f.alpha)) / nrm2


def random_unit_function(N: int, alpha: float, rng: np.random.Generator) -> BergmanFunctionDisc:
    """Complex Gaussian coefficients with 1/(n+1) decay, normalised."""
    a = (rng.standard_normal(N) + 1j * rng.standard_normal(N)) / np.arange(1, N + 1)
    return BergmanFunctionDisc(alpha, a).normalized()


@dataclass
class ConcentrationReport:
    alpha: float
    s: float
    R: float
    theta: float
    gap: float
    N: int
    domain: dict = field(default_factory=dict)
    beta: float | None = None
    residual: float | None = None
    eigvec_head: list = field(default_factory=list)
    kernel_cosine: float | None = None
    params: dict = field(default_factory=dict)

    @property
    def extremal(self) -> bool:
        return abs(self.gap) < 1e-5

    def to_json(self) -> dict:
        d = asdict(self)
        d["status"] = "extremal" if self.extremal else "sub-extremal"
        return d


def kernel_cosine(v, w, alpha: float) -> float:
    """|<v, K_w>| / (|v| |K_w|) in the truncated coefficient space."""
    k, _ = kernel_disc(KernelSpecDisc(alpha, complex(w)), len(v))
    return float(abs(np.vdot(k.coeffs, v)) / (np.linalg.norm(k.coeffs) * np.linalg.norm(v)))


def sup_concentration(dom: Domain, alpha: float, N: int = DEFAULT_BASIS) -> ConcentrationReport:
    """Top eigenpair of the localisation matrix of a disc-model domain, compared with theta."""
    disc = dom.to_disc()
    s = disc.hyperbolic_measure()
    if not math.isfinite(s):
        raise DivergentMeasureError("domain has infinite hyperbolic measure")
    M = toeplitz_matrix(disc, alpha, N)
    lam, v, res = top_eigenpair(M)
    phase = v[np.argmax(np.abs(v))]
    v = v * (abs(phase) / phase)
    th = theta(s, alpha)
    kc = None
    if isinstance(disc, PHDisc):
        kc = kernel_cosine(v, disc.center, alpha)
    elif isinstance(disc, EuclideanDisc):
        kc = kernel_cosine(v, disc.pseudohyperbolic.center, alpha)
    return ConcentrationReport(
        alpha=float(alpha), s=float(s), R=lam, theta=th, gap=th - lam, N=N,
        domain=dom.to_json() if not isinstance(dom, Mask) else {"model": "disc", "shape": {"kind": "mask"}},
        residual=res, eigvec_head=[[z.real, z.imag] for z in v[:8]], kernel_cosine=kc,
    )


def converged_sup(dom: Domain, alpha: float, N0: int = 32, N_max: int = 512, tol: float = 1e-11) -> ConcentrationReport:
    """sup_concentration with the basis doubled until the top eigenvalue settles to ``tol``.

    Domains close to the unit circle need many monomials; the report's
    ``params`` record the sequence of sizes tried.
    """
    N = N0
    rep = sup_concentration(dom, alpha, N)
    hist = [(N, rep.R)]
    while N < N_max:
        N = min(2 * N, N_max)
        nxt = sup_concentration(dom, alpha, N)
        hist.append((N, nxt.R))
        done = abs(nxt.R - rep.R) < tol
        rep = nxt
        if done:
            break
    rep.params["basis_history"] = hist
    rep.params["converged"] = len(hist) > 1 and abs(hist[-1][1] - hist[-2][1]) < tol
    return rep


def c_delta_beta(delta: Domain, beta: float, N: int | None = DEFAULT_BASIS) -> ConcentrationReport:
    """Maximal wavelet concentration C_Delta^beta of a half-plane domain.

    Delta is carried to the disc by the Cayley map, alpha = 2 beta - 1 and
    the disc measure is nu(Delta) / 4.  ``N=None`` grows the basis until
    the eigenvalue has converged (see :func:`converged_sup`).
    """
    if delta.model != "halfplane":
        raise UsageError("c_delta_beta expects a half-plane domain")
    nu = delta.hyperbolic_measure()
    if not math.isfinite(nu):
        raise DivergentMeasureError("nu(Delta) is infinite")
    alpha = 2.0 * beta - 1.0
    disc = delta.to_disc()
    rep = converged_sup(disc, alpha) if N is None else sup_concentration(disc, alpha, N)
    rep.beta = float(beta)
    rep.domain = delta.to_json()
    rep.params["nu"] = nu
    return rep


# ----------------------------------------------------------------------------
# random test domains


def random_disc_union(rng: np.random.Generator, s: float, k: int | None = None, max_tries: int = 200) -> Union:
    """2 to 4 disjoint Euclidean discs with total hyperbolic measure s."""
    for _ in range(max_tries):
        kk = int(rng.integers(2, 5)) if k is None else k
        c = 0.55 * np.sqrt(rng.uniform(0, 1, kk)) * np.exp(2j * math.pi * rng.uniform(0, 1, kk))
        base = rng.uniform(0.5, 1.0, kk)
        # largest scale keeping discs disjoint and inside D
        lim = np.min((1.0 - np.abs(c)) / base)
        for i in range(kk):
            for j in range(i + 1, kk):
                lim = min(lim, abs(c[i] - c[j]) / (base[i] + base[j]))
        hi = 0.98 * lim

        def make(t):
            return Union(tuple(EuclideanDisc(complex(ci), float(t * bi)) for ci, bi in zip(c, base)))

        try:
            if make(hi).hyperbolic_measure() < s:
                continue
            return rescale_to_measure(make, s, 1e-6, hi)
        except (ValueError, geo.GeometryError):
            continue
    raise RuntimeError("could not place a disc union of the requested measure")


def random_rectangle(rng: np.random.Generator, s: float) -> CayleyImage:
    """Cayley image of a half-plane rectangle with disc measure s (nu = 4 s)."""
    s0 = math.exp(rng.uniform(math.log(0.3), math.log(1.2)))
    s1 = s0 * math.exp(rng.uniform(0.3, 1.5))
    width = 4.0 * s / (1.0 / s0 - 1.0 / s1)
    x0 = rng.uniform(-0.5, 0.5) - 0.5 * width
    return CayleyImage(Rectangle(x0, x0 + width, s0, s1))


def random_superlevel_mask(rng: np.random.Generator, s: float, grid: DiskGrid, N: int = 16) -> Mask:
    from .rearrangement import level_profile, superlevel_domain, u_profile

    g = random_unit_function(N, grid.alpha, rng)
    u = u_profile(g, grid)
    return superlevel_domain(u, grid, s, level_profile(u, grid))


def random_polygon(rng: np.random.Generator, s: float, max_tries: int = 50) -> Domain:
    """Random convex polygon (3 to 8 vertices) scaled about a random centre to measure s."""
    from .domains import Polygon

    for _ in range(max_tries):
        k = int(rng.integers(3, 9))
        ang = np.sort(rng.uniform(0, 2 * math.pi, k))
        if np.max(np.diff(np.concatenate([ang, [ang[0] + 2 * math.pi]]))) >= math.pi:
            continue
        v = np.exp(1j * ang)
        c = complex(0.3 * rng.uniform(-1, 1), 0.3 * rng.uniform(-1, 1))
        hi = 0.999 * (1.0 - abs(c))

        def make(t):
            return Polygon(tuple(c + t * v))

        try:
            if make(hi).hyperbolic_measure() < s:
                continue
            return rescale_to_measure(make, s, 1e-6, hi)
        except ValueError:
            continue
    raise RuntimeError("could not build a polygon of the requested measure")


# ----------------------------------------------------------------------------
# randomised Faber-Krahn tuples

FAMILIES = ("union", "rectangle", "mask", "polygon", "annulus", "kernel_disc")


def tuple_rng(seed: int, index: int) -> np.random.Generator:
    """Philox stream keyed by (seed, index); each tuple of a scan is reproducible on its own."""
    return np.random.Generator(np.random.Philox(key=[seed, index]))


@dataclass
class ScanRow:
    index: int
    seed: int
    family: str
    alpha: float
    s: float
    R: float
    theta: float
    gap: float


def faberkrahn_tuple(seed: int, index: int, families=FAMILIES, alphas=(-0.5, 0.0, 1.0, 2.5),
                     s_range=(0.2, 6.0), N: int = 24, grid_shape=(256, 512), grids: dict | None = None) -> ScanRow:
    """One random (f, Omega, alpha, s) tuple with mu(Omega) = s and its quotient R(f, Omega).

    ``kernel_disc`` tuples pair a truncated kernel with the disc at its
    centre and sit right at the bound; mask tuples use the grid measure of
    the mask as s.
    """
    from .quadrature import build_disk_grid

    grids = {} if grids is None else grids
    rng = tuple_rng(seed, index)
    fam = families[int(rng.integers(len(families)))]
    a = float(alphas[int(rng.integers(len(alphas)))])
    s = float(rng.uniform(*s_range))
    f = random_unit_function(N, a, rng)
    if fam == "union":
        dom = random_disc_union(rng, s)
    elif fam == "rectangle":
        dom = random_rectangle(rng, s)
    elif fam == "polygon":
        dom = random_polygon(rng, s)
    elif fam == "annulus":
        r_in = float(rng.uniform(0.0, 0.8))
        r_out = math.sqrt(1.0 - 1.0 / (1.0 / (1.0 - r_in ** 2) + s / math.pi))
        dom = Annulus(r_in, r_out)
    elif fam == "kernel_disc":
        rad = 0.7 * math.sqrt(rng.uniform())
        w = rad * complex(math.cos(2 * math.pi * rng.uniform()), math.sin(2 * math.pi * rng.uniform()))
        k, _ = kernel_disc(KernelSpecDisc(a, w), N)
        f = k.normalized()
        dom = PHDisc(w, s)
    elif fam == "mask":
        key = (a, tuple(grid_shape))
        if key not in grids:
            grids[key] = build_disk_grid(grid_shape[0], grid_shape[1], a)
        dom = random_superlevel_mask(rng, s, grids[key])
        s = dom.hyperbolic_measure()
    else:
        raise UsageError(f"unknown family {fam!r}")
    R = concentration_ratio(f, dom)
    th = theta(s, a)
    return ScanRow(index, seed, fam, a, s, R, th, th - R)
