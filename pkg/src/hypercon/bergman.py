"""Weighted Bergman spaces A_alpha of the disc and the half-plane.

Functions on the disc are stored by their coefficients in the orthonormal
basis e_n(z) = z**n / sqrt(c_n).  Localisation to a domain is represented
by its Galerkin (Toeplitz) matrix in that basis.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import geometry as geo
from .domains import Domain, Mask
from .quadrature import DiskGrid, integrate
from .specfun import c_monomial, log_c_monomial

DEFAULT_BASIS = 64


class UsageError(ValueError):
    pass


class EigenSolverError(ArithmeticError):
    pass


def basis_scale(N: int, alpha: float) -> np.ndarray:
    """1/sqrt(c_n) for n < N."""
    return np.exp(-0.5 * log_c_monomial(np.arange(N), alpha))


def basis_values(z, N: int, alpha: float) -> np.ndarray:
    """Matrix E[k, n] = e_n(z_k) for flat node array z."""
    z = np.asarray(z, dtype=complex).ravel()
    E = np.empty((z.size, N), dtype=complex)
    E[:, 0] = 1.0
    for n in range(1, N):
        E[:, n] = E[:, n - 1] * z
    return E * basis_scale(N, alpha)[None, :]


@dataclass(frozen=True, eq=False)
class BergmanFunctionDisc:
    alpha: float
    coeffs: np.ndarray

    def __post_init__(self):
        if not self.alpha > -1:
            raise UsageError("alpha must exceed -1")
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=complex).ravel())

    @property
    def N(self) -> int:
        return self.coeffs.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def normalized(self) -> "BergmanFunctionDisc":
        nrm = self.norm()
        if nrm == 0:
            raise UsageError("cannot normalise the zero function")
        return BergmanFunctionDisc(self.alpha, self.coeffs / nrm)

    def __call__(self, z):
        return eval_disc(self, z)

    @classmethod
    def basis(cls, n: int, alpha: float, N: int | None = None) -> "BergmanFunctionDisc":
        N = n + 1 if N is None else N
        a = np.zeros(N, dtype=complex)
        a[n] = 1.0
        return cls(alpha, a)

    @classmethod
    def from_monomials(cls, alpha: float, poly) -> "BergmanFunctionDisc":
        """From coefficients p_n of sum p_n z**n."""
        p = np.asarray(poly, dtype=complex)
        return cls(alpha, p * np.sqrt(c_monomial(np.arange(p.size), alpha)))


def eval_disc(f: BergmanFunctionDisc, z):
    """Sum of a_n z**n / sqrt(c_n) by Horner's scheme."""
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1):
        raise geo.GeometryError("evaluation point outside the disc")
    b = f.coeffs * basis_scale(f.N, f.alpha)
    acc = np.zeros_like(z)
    for bn in b[::-1]:
        acc = acc * z + bn
    return acc if acc.ndim else complex(acc)


def inner_product_alpha(f, g, grid: DiskGrid | None = None):
    """<f, g>_alpha.

    Two :class:`BergmanFunctionDisc` without a grid use the coefficient
    (Parseval) route.  With a grid, values are sampled at the grid nodes and
    integrated against (1 - |z|^2)**alpha; ``f`` and ``g`` may then also be
    plain callables or arrays of node samples.
    """
    if grid is None:
        if not (isinstance(f, BergmanFunctionDisc) and isinstance(g, BergmanFunctionDisc)):
            raise UsageError("coefficient inner product needs two BergmanFunctionDisc")
        if f.alpha != g.alpha:
            raise UsageError(f"alpha mismatch: {f.alpha} vs {g.alpha}")
        n = min(f.N, g.N)
        return complex(np.vdot(g.coeffs[:n], f.coeffs[:n]))
    for h in (f, g):
        if isinstance(h, BergmanFunctionDisc) and h.alpha != grid.alpha:
            raise UsageError(f"alpha mismatch: function {h.alpha} vs grid {grid.alpha}")

    def sample(h):
        if callable(h):
            return np.asarray(h(grid.nodes))
        return np.asarray(h).ravel()

    return complex(integrate(sample(f) * np.conj(sample(g)), grid, "alpha"))


@dataclass(frozen=True)
class KernelSpecDisc:
    alpha: float
    w: complex

    def __post_init__(self):
        if abs(self.w) >= 1:
            raise geo.GeometryError("kernel point must satisfy |w| < 1")


def kernel_value(w, z, alpha: float):
    """K_w(z) = (1+alpha)/pi (1 - conj(w) z)**(-alpha-2)."""
    return (1.0 + alpha) / math.pi * (1.0 - np.conj(w) * np.asarray(z)) ** (-alpha - 2.0)


def kernel_norm_sq(w, alpha: float) -> float:
    return (1.0 + alpha) / math.pi * (1.0 - abs(w) ** 2) ** (-2.0 - alpha)


def kernel_tail(w, alpha: float, N: int) -> float:
    """sum_{n >= N} |w|**(2n) / c_n, the squared norm lost by truncation."""
    return max(kernel_norm_sq(w, alpha) - float(np.sum(abs(w) ** (2 * np.arange(N)) / c_monomial(np.arange(N), alpha))), 0.0)


def kernel_disc(spec: KernelSpecDisc, N: int = DEFAULT_BASIS):
    """Truncated coefficient form of K_w plus its closed-form evaluator."""
    n = np.arange(N)
    coeffs = np.conj(spec.w) ** n * basis_scale(N, spec.alpha)
    f = BergmanFunctionDisc(spec.alpha, coeffs)

    def evaluator(z):
        return kernel_value(spec.w, z, spec.alpha)

    return f, evaluator


def t_alpha_map(f, alpha: float):
    """Disc evaluator of T_alpha f(w) = 2**(alpha/2) (1-w)**(-alpha-2) f((w+1)/(i(w-1)))."""

    def Tf(w):
        w = np.asarray(w, dtype=complex)
        return 2.0 ** (alpha / 2.0) * (1.0 - w) ** (-alpha - 2.0) * f(geo.cayley_to_halfplane(w))

    return Tf


def t_alpha_inverse(F, alpha: float):
    """Half-plane evaluator of the inverse of :func:`t_alpha_map`."""

    def f(z):
        z = np.asarray(z, dtype=complex)
        w = geo.cayley_to_disk(z)
        return 2.0 ** (-alpha / 2.0) * (1.0 - w) ** (alpha + 2.0) * F(w)

    return f


def halfplane_kernel(w, z, alpha: float, kappa: float = 1.0):
    """kappa * (z - conj(w))**(-alpha-2), the half-plane reproducing kernel shape."""
    return kappa * (np.asarray(z) - np.conj(w)) ** (-alpha - 2.0)


def halfplane_norm_sq(f, alpha: float, grid: DiskGrid) -> float:
    """int_{C+} |f|^2 s**alpha dx ds, evaluated on the Cayley image of a disc grid."""
    w = grid.nodes
    z = geo.cayley_to_halfplane(w)
    jac = 4.0 / np.abs(1.0 - w) ** 4  # |dz/dw|^2
    vals = np.abs(f(z)) ** 2 * z.imag ** alpha * jac
    return float(integrate(vals, grid, "lebesgue"))


# ----------------------------------------------------------------------------
# localisation matrices


@dataclass(frozen=True, eq=False)
class ToeplitzMatrix:
    alpha: float
    N: int
    entries: np.ndarray = field(repr=False)
    domain: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "alpha": self.alpha,
            "domain": self.domain,
            "entries": [[[z.real, z.imag] for z in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, obj) -> "ToeplitzMatrix":
        if isinstance(obj, str):
            obj = json.loads(obj)
        E = np.array([[complex(a, b) for a, b in row] for row in obj["entries"]])
        return cls(float(obj["alpha"]), int(obj["N"]), E, obj.get("domain", {}))

    def quadratic_form(self, a) -> float:
        a = np.asarray(a, dtype=complex)[: self.N]
        return float(np.vdot(a, self.entries @ a).real)

    def hermitian_defect(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))


def toeplitz_matrix(dom: Domain, alpha: float, N: int = DEFAULT_BASIS) -> ToeplitzMatrix:
    """M[m, n] = int_Omega e_n conj(e_m) (1-|z|^2)**alpha dz."""
    if isinstance(dom, Mask):
        g = dom.grid
        if N > g.exactness_degree + 1 or 2 * N >= g.n_theta:
            raise UsageError(f"grid {g.n_r}x{g.n_theta} too coarse for basis size {N}")
    disc = dom.to_disc()
    rule = disc.rule(alpha)
    E = basis_values(rule.nodes, N, alpha)
    w = rule.weights("alpha", alpha)
    M = E.conj().T @ (w[:, None] * E)
    M = 0.5 * (M + M.conj().T)
    return ToeplitzMatrix(float(alpha), int(N), M, dom.to_json() if not isinstance(dom, Mask) else {"model": "disc", "shape": {"kind": "mask"}})


def radial_eigenvalues(r_in: float, r_out: float, alpha: float, N: int) -> np.ndarray:
    """Diagonal of the Toeplitz matrix of {r_in < |z| < r_out} via incomplete beta."""
    from .specfun import reg_inc_beta

    out = np.empty(N)
    for n in range(N):
        hi = reg_inc_beta(min(r_out ** 2, 1.0), n + 1.0, alpha + 1.0)
        lo = reg_inc_beta(r_in ** 2, n + 1.0, alpha + 1.0)
        out[n] = hi - lo
    return out


def _start_vector(N: int) -> np.ndarray:
    rng = np.random.default_rng(0x5EED)
    v = rng.standard_normal(N) + 1j * rng.standard_normal(N)
    return v / np.linalg.norm(v)


def top_eigenpair(M: ToeplitzMatrix | np.ndarray, tol: float = 1e-11, max_iter: int = 20000):
    """Dominant eigenpair of a Hermitian positive semidefinite matrix.

    Power iteration from a fixed start vector; once the Rayleigh quotient has
    settled, a few Rayleigh-quotient-iteration steps polish the pair.
    Returns ``(lam, v, residual)``.
    """
    A = M.entries if isinstance(M, ToeplitzMatrix) else np.asarray(M, dtype=complex)
    if not np.all(np.isfinite(A)):
        raise EigenSolverError("matrix has non-finite entries")
    N = A.shape[0]
    v = _start_vector(N)
    lam = float(np.vdot(v, A @ v).real)
    res = math.inf
    prev = -math.inf
    best = -math.inf  # Rayleigh quotients bound the top eigenvalue from below
    for it in range(max_iter):
        y = A @ v
        lam = float(np.vdot(v, y).real)
        best = max(best, lam)
        res = float(np.linalg.norm(y - lam * v))
        if res < tol:
            return lam, v, res
        nrm = np.linalg.norm(y)
        if nrm == 0:
            return 0.0, v, 0.0
        v = y / nrm
        if it % 25 == 24:
            if abs(lam - prev) < 1e-9 * max(abs(lam), 1e-300):
                break
            prev = lam
    eye = np.eye(N)
    for _ in range(8):
        try:
            y = np.linalg.solve(A - lam * eye, v)
        except np.linalg.LinAlgError:
            break
        nrm = np.linalg.norm(y)
        if not np.isfinite(nrm) or nrm == 0:
            break
        v = y / nrm
        y = A @ v
        lam = float(np.vdot(v, y).real)
        res = float(np.linalg.norm(y - lam * v))
        if res < tol:
            if lam < best - 1e-9 * max(abs(best), 1.0):
                raise EigenSolverError(f"polishing converged to a lower eigenvalue {lam:.12g} < {best:.12g}")
            return lam, v, res
    raise EigenSolverError(f"top eigenpair did not converge: residual {res:.3e} at lambda={lam:.12g}")
