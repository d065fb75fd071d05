"""Hardy-space signals, Cauchy-type windows and the wavelet/Bergman transforms.

Conventions
-----------
* Fourier transform ``fhat(xi) = (2 pi)**-0.5 int f(t) exp(-i t xi) dt``;
  ``||f||_{H^2}**2 = int_0^inf |fhat(t)|**2 dt``.
* ``pi_z g(t) = s**-0.5 g((t - x)/s)`` for ``z = x + i s``, so
  ``(pi_z g)^(t) = s**0.5 exp(-i x t) ghat(s t)``.
* ``W f(z) = <f, pi_z psi_beta>``, computed on the frequency side as
  ``s**(beta + 1/2) / c_beta * int_0^inf t**beta fhat(t) exp(i z t) dt``.
* ``B_alpha f(z) = s**(-alpha/2 - 1) W f(z)`` with ``alpha = 2 beta - 1``.

Signals are finite combinations of shifted eigenfunctions
``pi_w psi_n^alpha`` (closed under the affine action), or raw frequency
samples on a :class:`~hypercon.quadrature.FrequencyGrid`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from . import geometry as geo
from .bergman import BergmanFunctionDisc, basis_values, halfplane_norm_sq, t_alpha_map
from .quadrature import DiskGrid, FrequencyGrid, build_disk_grid, build_frequency_grid, integrate, pairwise_sum
from .specfun import DomainError, gamma_ln, laguerre_table, window_norm_constant

#: Gauss-Laguerre nodes used when a transform is evaluated term by term
LAPLACE_NODES = 48


class CalibrationError(ArithmeticError):
    pass


@dataclass(frozen=True)
class WindowPsi:
    """psi_beta with Fourier transform t**beta exp(-t) / c_beta on t > 0."""

    beta: float
    c_beta: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "c_beta", window_norm_constant(self.beta))

    def fhat(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        pos = t > 0
        out[pos] = t[pos] ** self.beta * np.exp(-t[pos]) / self.c_beta
        return out

    def time(self, t):
        """psi_beta(t) = Gamma(beta+1) / (c_beta sqrt(2 pi)) (1 - i t)**(-beta-1)."""
        t = np.asarray(t, dtype=float)
        k = math.exp(gamma_ln(self.beta + 1.0)) / (self.c_beta * math.sqrt(2.0 * math.pi))
        return k * (1.0 - 1j * t) ** (-self.beta - 1.0)


def make_window(beta: float) -> WindowPsi:
    if not beta > 0:
        raise DomainError(f"beta must be positive, got {beta}")
    return WindowPsi(float(beta))


def eigen_normalizer(n: int, alpha: float) -> float:
    """b with int_0^inf |b t**((alpha+1)/2) exp(-t) L_n^(alpha+1)(2t)|**2 dt = 1."""
    return math.exp(0.5 * ((alpha + 2.0) * math.log(2.0) + gamma_ln(n + 1.0) - gamma_ln(n + alpha + 2.0)))


@dataclass(frozen=True)
class Term:
    coef: complex
    w: complex      # shift pi_w, w = x + i y in C+
    n: int


@dataclass(frozen=True, eq=False)
class SignalSpec:
    """A signal in H^2(C+) described on the frequency side.

    Either ``terms`` (sum of coef * pi_w psi_n^alpha) or ``samples``
    (values of fhat at the nodes of ``grid``) is set.
    """

    alpha: float
    terms: tuple = ()
    grid: FrequencyGrid | None = field(default=None, repr=False)
    samples: np.ndarray | None = field(default=None, repr=False)
    kind: str = "terms"

    def __post_init__(self):
        if not self.alpha > -1:
            raise DomainError("alpha must exceed -1")
        if self.samples is not None:
            if self.grid is None or np.shape(self.samples) != self.grid.t.shape:
                raise ValueError("samples must match a frequency grid")
            object.__setattr__(self, "samples", np.asarray(self.samples, dtype=complex))
        for tm in self.terms:
            if not np.imag(tm.w) > 0:
                raise geo.GeometryError("term shift must lie in C+")

    @property
    def beta(self) -> float:
        return (self.alpha + 1.0) / 2.0

    def fhat(self, t):
        """Frequency profile; identically zero for t <= 0."""
        t = np.asarray(t, dtype=float)
        if self.samples is not None:
            out = np.zeros(t.shape, dtype=complex)
            idx = np.searchsorted(self.grid.t, t)
            ok = (idx < self.grid.N) & np.isclose(self.grid.t[np.minimum(idx, self.grid.N - 1)], t, rtol=1e-12, atol=0)
            out[ok] = self.samples[idx[ok]]
            return out
        out = np.zeros(t.shape, dtype=complex)
        pos = t > 0
        tp = t[pos]
        a1 = self.alpha + 1.0
        for tm in self.terms:
            x, y = tm.w.real, tm.w.imag
            L = laguerre_table(tm.n, a1, 2.0 * y * tp)[tm.n]
            out[pos] += (tm.coef * eigen_normalizer(tm.n, self.alpha) * math.sqrt(y)
                         * np.exp(-1j * x * tp) * (y * tp) ** (a1 / 2.0) * np.exp(-y * tp) * L)
        return out

    def scaled(self, c: complex) -> "SignalSpec":
        if self.samples is not None:
            return SignalSpec(self.alpha, (), self.grid, c * self.samples, self.kind)
        return SignalSpec(self.alpha, tuple(Term(c * tm.coef, tm.w, tm.n) for tm in self.terms), kind=self.kind)

    def __add__(self, other: "SignalSpec") -> "SignalSpec":
        if self.samples is not None or other.samples is not None or self.alpha != other.alpha:
            raise ValueError("only term signals of equal alpha can be added")
        return SignalSpec(self.alpha, self.terms + other.terms, kind="terms")

    def shifted(self, w) -> "SignalSpec":
        """pi_w applied to the signal (term signals only)."""
        w = complex(w)
        if self.samples is not None:
            raise ValueError("shift of sampled signals is not supported")
        # pi_w pi_v = pi_{w o v} with (x1 + i s1) o (x2 + i s2) = x1 + s1 x2 + i s1 s2
        return SignalSpec(self.alpha, tuple(
            Term(tm.coef, complex(w.real + w.imag * tm.w.real, w.imag * tm.w.imag), tm.n) for tm in self.terms
        ), kind=self.kind)

    def normalized(self) -> "SignalSpec":
        nrm = signal_norm(self)
        if nrm == 0:
            raise ValueError("cannot normalise the zero signal")
        return self.scaled(1.0 / nrm)

    def to_json(self) -> dict:
        if self.samples is not None:
            return {
                "kind": "samples", "alpha": self.alpha, "a": self.grid.a, "N": self.grid.N,
                "samples": [[float(t), v.real, v.imag] for t, v in zip(self.grid.t, self.samples)],
            }
        return {
            "kind": "terms", "alpha": self.alpha,
            "terms": [[tm.coef.real, tm.coef.imag, tm.w.real, tm.w.imag, tm.n] for tm in self.terms],
        }


def eigenfunction_psi(n: int, alpha: float) -> SignalSpec:
    """psi_n^alpha: fhat(t) = b t**((alpha+1)/2) exp(-t) L_n^(alpha+1)(2t), unit H^2 norm."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    return SignalSpec(float(alpha), (Term(1.0 + 0j, 1j, int(n)),), kind="eigenfunction")


def extremizer_signal(beta: float, w) -> SignalSpec:
    """pi_w psi_0^(2 beta - 1): the optimally concentrated signal for discs centred at w."""
    if not beta > 0:
        raise DomainError("beta must be positive")
    w = complex(geo._as_complex(w))
    geo.HalfPlanePoint.from_complex(w)
    return SignalSpec(2.0 * beta - 1.0, (Term(1.0 + 0j, w, 0),), kind="extremizer")


def sampled_signal(alpha: float, grid: FrequencyGrid, fhat) -> SignalSpec:
    vals = fhat(grid.t) if callable(fhat) else np.asarray(fhat)
    return SignalSpec(float(alpha), (), grid, np.asarray(vals, dtype=complex), kind="samples")


def signal_from_json(obj) -> SignalSpec:
    if isinstance(obj, str):
        obj = json.loads(obj)
    kind = obj.get("kind")
    if kind == "eigenfunction":
        return eigenfunction_psi(int(obj["n"]), float(obj["alpha"]))
    if kind == "extremizer":
        return extremizer_signal(float(obj["beta"]), complex(*obj["w"]))
    if kind == "terms":
        alpha = float(obj["alpha"])
        terms = tuple(Term(complex(a, b), complex(x, y), int(n)) for a, b, x, y, n in obj["terms"])
        return SignalSpec(alpha, terms, kind="terms")
    if kind == "samples":
        grid = build_frequency_grid(float(obj["a"]), int(obj["N"]))
        rows = np.asarray(obj["samples"], dtype=float)
        if rows.shape != (grid.N, 3) or not np.allclose(rows[:, 0], grid.t, rtol=1e-12, atol=0):
            raise ValueError("sample nodes do not match the declared frequency grid")
        return SignalSpec(float(obj["alpha"]), (), grid, rows[:, 1] + 1j * rows[:, 2], kind="samples")
    raise ValueError(f"unknown signal kind {kind!r}")


# ----------------------------------------------------------------------------
# frequency-side integrals


def _laplace_rule(a: float, N: int = LAPLACE_NODES):
    x, w = special.roots_genlaguerre(N, a)
    return x, w


def _laplace_poly(a: float, coeff_fn, kappa, N: int = LAPLACE_NODES):
    """int_0^inf t**a P(t) exp(-kappa t) dt for complex kappa with Re kappa > 0.

    Rotating the contour to t = tau / kappa gives kappa**(-a-1) times a
    Gauss-Laguerre sum, exact when P is a polynomial of degree < 2N.
    ``coeff_fn(t)`` evaluates P at (complex) nodes of shape (..., N).
    """
    kappa = np.asarray(kappa, dtype=complex)
    x, w = _laplace_rule(a, N)
    t = x[None, :] / kappa.ravel()[:, None]
    vals = coeff_fn(t) @ w
    return (vals * kappa.ravel() ** (-a - 1.0)).reshape(kappa.shape)


def _laguerre_complex(n: int, a: float, x):
    prev = np.ones_like(x)
    if n == 0:
        return prev
    cur = 1.0 + a - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + a - x) * cur - (k + a) * prev) / (k + 1)
    return cur


def signal_gram(f: SignalSpec) -> np.ndarray:
    """Exact H^2 Gram matrix of the terms of a term signal."""
    a1 = f.alpha + 1.0
    T = f.terms
    G = np.empty((len(T), len(T)), dtype=complex)
    for j, tj in enumerate(T):
        for k, tk in enumerate(T):
            yj, yk = tj.w.imag, tk.w.imag
            kappa = yj + yk - 1j * (tk.w.real - tj.w.real)
            bj, bk = eigen_normalizer(tj.n, f.alpha), eigen_normalizer(tk.n, f.alpha)

            def P(t, tj=tj, tk=tk, yj=yj, yk=yk):
                return _laguerre_complex(tj.n, a1, 2 * yj * t) * _laguerre_complex(tk.n, a1, 2 * yk * t)

            I = _laplace_poly(a1, P, kappa)
            G[j, k] = bj * bk * math.sqrt(yj * yk) * (yj * yk) ** (a1 / 2.0) * I
    return G


def signal_norm(f: SignalSpec) -> float:
    """||f||_{H^2} = (int_0^inf |fhat|^2 dt)**0.5."""
    if f.samples is not None:
        g = f.grid
        return math.sqrt(max(pairwise_sum(np.abs(f.samples) ** 2 / g.weight(g.t) * g.v).real, 0.0))
    if not f.terms:
        return 0.0
    c = np.array([tm.coef for tm in f.terms])
    G = signal_gram(f)
    return math.sqrt(max(np.vdot(c, G.T @ c).real, 0.0))


def bergman_transform(f: SignalSpec, alpha: float | None = None):
    """Evaluator z -> B_alpha f(z) = (1/c_beta) int_0^inf t**beta fhat(t) exp(i z t) dt."""
    alpha = f.alpha if alpha is None else float(alpha)
    if not alpha > -1:
        raise DomainError("alpha must exceed -1")
    beta = (alpha + 1.0) / 2.0
    c_beta = window_norm_constant(beta)

    if f.samples is not None:
        g = f.grid
        comp = g.t ** beta * f.samples / g.weight(g.t) * g.v

        def Bf(z):
            z = np.asarray(z, dtype=complex)
            if np.any(z.imag <= 0):
                raise DomainError("B_alpha is evaluated only for Im z > 0")
            return (np.exp(1j * z.ravel()[:, None] * g.t[None, :]) @ comp).reshape(z.shape) / c_beta

        return Bf

    if alpha != f.alpha:
        raise ValueError("term signals are transformed at their own alpha")
    a1 = alpha + 1.0

    def Bf(z):
        z = np.asarray(z, dtype=complex)
        if np.any(z.imag <= 0):
            raise DomainError("B_alpha is evaluated only for Im z > 0")
        out = np.zeros(z.shape, dtype=complex)
        for tm in f.terms:
            x, y = tm.w.real, tm.w.imag
            # t^beta fhat(t) e^{izt} = const * t^(alpha+1) L(2yt) exp(-(y - i(z - x)) t)
            kappa = y - 1j * (z - x)
            const = tm.coef * eigen_normalizer(tm.n, alpha) * math.sqrt(y) * y ** (a1 / 2.0)
            out += const * _laplace_poly(a1, lambda t, n=tm.n, y=y: _laguerre_complex(n, a1, 2 * y * t), kappa)
        return out / c_beta

    return Bf


def wavelet_transform(f: SignalSpec, beta: float, z):
    """W f(z) = <f, pi_z psi_beta> for z = x + i s (scalar or array)."""
    if abs(2.0 * beta - 1.0 - f.alpha) > 1e-15 and f.samples is None:
        raise ValueError("term signals carry alpha = 2 beta - 1")
    z = np.asarray(geo._as_complex(z), dtype=complex)
    Bf = bergman_transform(f, 2.0 * beta - 1.0)
    out = z.imag ** (beta + 0.5) * Bf(z)
    return out if out.ndim else complex(out)


def wavelet_transform_time(f_time, beta: float, z, lim: float = np.inf) -> complex:
    """Time-domain oracle s**-0.5 int f(t) conj(psi_beta((t - x)/s)) dt by adaptive quadrature."""
    from scipy import integrate as spi

    z = complex(z)
    x, s = z.real, z.imag
    psi = make_window(beta)

    def g(t):
        return f_time(t) * np.conj(psi.time((t - x) / s)) / math.sqrt(s)

    re = spi.quad(lambda t: float(np.real(g(t))), -lim, lim, limit=2000, epsabs=1e-13, epsrel=1e-12)[0]
    im = spi.quad(lambda t: float(np.imag(g(t))), -lim, lim, limit=2000, epsabs=1e-13, epsrel=1e-12)[0]
    return complex(re, im)


def halfplane_mass(F, grid: DiskGrid, measure_exponent: float = -2.0, mask=None) -> float:
    """int |F(z)|**2 s**measure_exponent dx ds over C+, by the Cayley substitution onto ``grid``.

    With exponent -2 this is the hyperbolic mass int |F|^2 dnu.
    """
    w = grid.nodes
    z = geo.cayley_to_halfplane(w)
    jac = 4.0 / np.abs(1.0 - w) ** 4
    vals = np.abs(F(z)) ** 2 * z.imag ** measure_exponent * jac
    return float(integrate(vals, grid, "lebesgue", mask=mask))


def wavelet_mass(f: SignalSpec, grid: DiskGrid, beta: float | None = None) -> float:
    """int_{C+} |W f|^2 dx ds / s^2 over the Cayley preimage of the grid's support."""
    beta = f.beta if beta is None else beta
    return halfplane_mass(lambda z: wavelet_transform(f, beta, z), grid, -2.0)


def signal_to_disc(f: SignalSpec, N: int, grid: DiskGrid, kappa: float = 1.0) -> BergmanFunctionDisc:
    """Coefficients of T_alpha(B_alpha f) / kappa in the basis e_n, by projection on ``grid``."""
    if grid.alpha != f.alpha:
        raise ValueError("grid alpha must match the signal's alpha")
    TB = t_alpha_map(bergman_transform(f), f.alpha)
    vals = TB(grid.nodes)
    E = basis_values(grid.nodes, N, f.alpha)
    coeffs = E.conj().T @ (vals * grid.w_alpha)
    return BergmanFunctionDisc(f.alpha, coeffs / kappa)


# ----------------------------------------------------------------------------
# calibration of the unnormalised constants


@dataclass(frozen=True)
class Calibration:
    alpha: float
    kappa_T: float
    kappa_B: float
    spread_T: float
    spread_B: float

    @property
    def kappa(self) -> float:
        """Norm ratio of the composite T_alpha o B_alpha."""
        return self.kappa_T * self.kappa_B

    def to_json(self) -> dict:
        return {"alpha": self.alpha, "kappa_T": self.kappa_T, "kappa_B": self.kappa_B,
                "spread_T": self.spread_T, "spread_B": self.spread_B}


def calibration_signals(alpha: float, count: int = 6, seed: int = 1) -> list[SignalSpec]:
    """Deterministic mix of eigenfunctions and shifted extremizers."""
    rng = np.random.default_rng(seed)
    out = []
    for k in range(count):
        n = int(rng.integers(0, 6))
        w = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.6, 1.6))
        c = complex(rng.standard_normal(), rng.standard_normal())
        f = eigenfunction_psi(n, alpha).scaled(c) + eigenfunction_psi(0, alpha).shifted(w)
        out.append(f)
    return out


def calibrate_unitarity(alpha: float, grid: DiskGrid | None = None, signals=None, tol: float = 1e-5) -> Calibration:
    """Measure ||T_alpha F|| / ||F|| and ||B_alpha f|| / ||f|| over a signal set.

    The half-plane area measure is plain dx ds.  Raises
    :class:`CalibrationError` when either ratio varies by more than ``tol``
    (relative standard deviation), which would indicate a bug.
    """
    grid = build_disk_grid(64, 128, alpha) if grid is None else grid
    if grid.alpha != alpha:
        raise ValueError("grid alpha must match")
    signals = calibration_signals(alpha) if signals is None else signals
    rT, rB = [], []
    for f in signals:
        Bf = bergman_transform(f, alpha)
        hp = halfplane_norm_sq(Bf, alpha, grid)
        disc = float(integrate(np.abs(t_alpha_map(Bf, alpha)(grid.nodes)) ** 2, grid, "alpha"))
        rB.append(math.sqrt(hp) / signal_norm(f))
        rT.append(math.sqrt(disc / hp))
    rT, rB = np.array(rT), np.array(rB)
    cal = Calibration(float(alpha), float(rT.mean()), float(rB.mean()),
                      float(rT.std() / rT.mean()), float(rB.std() / rB.mean()))
    if cal.spread_T > tol or cal.spread_B > tol:
        raise CalibrationError(f"norm ratios not constant: spread_T={cal.spread_T:.2e}, spread_B={cal.spread_B:.2e}")
    return cal
