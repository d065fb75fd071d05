"""Concentration problems under a Lebesgue-measure constraint |Omega| = s.

theta1 and theta2 are the weighted-area integrals
``2 int t (1 - t^2)**alpha dt`` over ``[0, sqrt(s/pi)]`` and
``[sqrt(1 - s/pi), 1]``.  The constant function attains
``(1 + alpha) * theta_i`` on the corresponding radial domain, since
``||1||^2 = pi / (1 + alpha)``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from functools import lru_cache

import numpy as np
from scipy import integrate as spi

from .bergman import DEFAULT_BASIS, radial_eigenvalues, toeplitz_matrix, top_eigenpair
from .domains import Annulus, Domain, boundary_annulus, centered_disc
from .specfun import gamma_ln, log_c_monomial, reg_inc_beta


class GateError(AssertionError):
    """A closed form disagreed with the integral that defines it."""


def _check_s(s: float):
    if not (0.0 < s < math.pi):
        raise ValueError(f"Lebesgue measure must lie in (0, pi), got {s}")


def theta1_integral(s: float, alpha: float) -> float:
    _check_s(s)
    return 2.0 * spi.quad(lambda t: t * (1 - t * t) ** alpha, 0.0, math.sqrt(s / math.pi), epsabs=1e-14, epsrel=1e-13)[0]


def theta2_integral(s: float, alpha: float) -> float:
    _check_s(s)
    # (1 - t)**alpha is handled by the algebraic weight
    return 2.0 * spi.quad(lambda t: t * (1 + t) ** alpha, math.sqrt(1 - s / math.pi), 1.0,
                          weight="alg", wvar=(0.0, alpha), epsabs=1e-14, epsrel=1e-13)[0]


def _theta1_closed(s, alpha):
    return -math.expm1((1.0 + alpha) * math.log1p(-s / math.pi)) / (1.0 + alpha)


def _theta2_closed(s, alpha):
    return (s / math.pi) ** (1.0 + alpha) / (1.0 + alpha)


@lru_cache(maxsize=None)
def _gate(alpha: float) -> float:
    worst = 0.0
    for s in (0.05, 0.7, math.pi / 2, 2.5, 3.1):
        worst = max(worst, abs(_theta1_closed(s, alpha) - theta1_integral(s, alpha)),
                    abs(_theta2_closed(s, alpha) - theta2_integral(s, alpha)))
    if worst > 1e-10:
        raise GateError(f"closed forms disagree with the defining integrals at alpha={alpha} ({worst:.2e})")
    return worst


def theta1(s: float, alpha: float) -> float:
    """(1 - (1 - s/pi)**(1+alpha)) / (1 + alpha)."""
    _check_s(s)
    _gate(float(alpha))
    return _theta1_closed(s, alpha)


def theta2(s: float, alpha: float) -> float:
    """(s/pi)**(1+alpha) / (1 + alpha)."""
    _check_s(s)
    _gate(float(alpha))
    return _theta2_closed(s, alpha)


def stated_minimizer(alpha: float, s: float) -> Domain:
    """Centred disc for alpha <= 0, outer annulus D minus D(0, sqrt(1 - s/pi)) for alpha > 0."""
    _check_s(s)
    if alpha <= 0:
        return centered_disc(math.sqrt(s / math.pi))
    return boundary_annulus(math.sqrt(1.0 - s / math.pi))


def stated_bound(alpha: float, s: float) -> float:
    """The lower bound as printed: theta1 (alpha < 0), theta2 (alpha > 0), s (alpha = 0)."""
    if alpha < 0:
        return theta1(s, alpha)
    if alpha > 0:
        return theta2(s, alpha)
    return s


def constant_function_bound(alpha: float, s: float) -> float:
    """R(1, Omega*) on the stated minimiser: (1 + alpha) theta_i, which is s/pi at alpha = 0."""
    if alpha == 0:
        return s / math.pi
    return (1.0 + alpha) * (theta1(s, alpha) if alpha < 0 else theta2(s, alpha))


@dataclass
class CandidateResult:
    domain: dict
    lebesgue: float
    sup_R: float
    R_const: float
    excess: float


@dataclass
class LebesgueMinReport:
    alpha: float
    s: float
    printed_bound: float
    constant_bound: float
    minimizer_sup: float
    minimizer_attains: bool
    others_exceed: bool
    candidates: list = field(default_factory=list)
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.minimizer_attains and self.others_exceed

    def to_json(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


def sup_R(dom: Domain, alpha: float, N: int) -> float:
    if isinstance(dom, Annulus):
        return float(np.max(radial_eigenvalues(dom.r_in, dom.r_out, alpha, N)))
    return top_eigenpair(toeplitz_matrix(dom, alpha, N))[0]


def _others_exceed(alpha, m_sup, results, tol) -> bool:
    # alpha = 0: radial domains tie with the disc, so only ">=" is claimed
    if alpha == 0:
        return all(r.sup_R >= m_sup - tol for r in results)
    return all(r.sup_R > m_sup for r in results)


def lebesgue_min_check(alpha: float, s: float, candidates, N: int = DEFAULT_BASIS, tol: float = 1e-4) -> LebesgueMinReport:
    """Compare sup_f R(f, Omega) of the stated minimiser and of other candidates with |Omega| = s."""
    _check_s(s)
    for c in candidates:
        m = c.lebesgue_measure()
        if abs(m - s) > 1e-6:
            raise ValueError(f"candidate has Lebesgue measure {m}, expected {s}")
    bound = constant_function_bound(alpha, s)
    mini = stated_minimizer(alpha, s)
    m_sup = sup_R(mini, alpha, N)
    results = []
    for c in candidates:
        val = sup_R(c, alpha, N)
        r1 = float(np.real(toeplitz_matrix(c, alpha, 1).entries[0, 0]))
        results.append(CandidateResult(c.to_json(), c.lebesgue_measure(), val, r1, val - m_sup))
    note = ""
    if alpha > 0 and m_sup > bound + tol:
        note = "outer annulus: monomials z^n concentrate on it, so sup_f R exceeds the constant-function value"
    return LebesgueMinReport(
        alpha=float(alpha), s=float(s), printed_bound=stated_bound(alpha, s), constant_bound=bound,
        minimizer_sup=m_sup, minimizer_attains=abs(m_sup - bound) < tol,
        others_exceed=_others_exceed(alpha, m_sup, results, tol),
        candidates=[asdict(r) for r in results], note=note,
    )


@dataclass
class EscapeReport:
    alpha: float
    r: float
    R: list
    inner_mass: list
    polar_bound: list
    first_n_above: int | None
    threshold: float
    increasing_from: int | None

    def to_json(self):
        return asdict(self)


def escape_demo(alpha: float, s_lebesgue: float | None = None, n_max: int = 512, threshold: float = 0.99,
                r: float | None = None) -> EscapeReport:
    """R(f_n, D minus D(0, r)) for the unit monomials f_n = z^n / ||z^n||, n = 0..n_max.

    The inner mass is I_{r^2}(n+1, alpha+1).  ``polar_bound`` is
    ``2 pi d_n^2 int_0^r t^(2n) (1-t^2)^alpha dt`` with ``d_n = 1/||z^n||``,
    which dominates the inner mass because t^(2n+1) <= t^(2n) on [0, 1].
    ``increasing_from`` is the first n after which R increases strictly
    (judged on the inner mass, since R rounds to 1 in floating point).
    """
    if (s_lebesgue is None) == (r is None):
        raise ValueError("give exactly one of s_lebesgue and r")
    r = escape_radius(s_lebesgue) if r is None else float(r)
    if not 0 < r < 1:
        raise ValueError("r must lie in (0, 1)")
    inner, bound = [], []
    for n in range(n_max + 1):
        inner.append(reg_inc_beta(r * r, n + 1.0, alpha + 1.0))
        log_b = gamma_ln(n + 0.5) + gamma_ln(alpha + 1.0) - gamma_ln(n + alpha + 1.5)
        bound.append(math.exp(log_b - log_c_monomial(n, alpha)) * math.pi * reg_inc_beta(r * r, n + 0.5, alpha + 1.0))
    R = [1.0 - m for m in inner]
    first = next((n for n, v in enumerate(R) if v > threshold), None)
    inc = None
    for n0 in range(len(R) - 1):
        if all(inner[k + 1] < inner[k] or inner[k] == 0.0 for k in range(n0, len(R) - 1)):
            inc = n0
            break
    return EscapeReport(float(alpha), r, R, inner, bound, first, threshold, inc)


def escape_radius(s_lebesgue: float) -> float:
    """r_s with |D minus D(0, r_s)| = s."""
    _check_s(s_lebesgue)
    return math.sqrt(1.0 - s_lebesgue / math.pi)


@dataclass
class AnnuliReport:
    alpha: float
    s: float
    N: int
    k: list
    radii: list
    sup_R: list
    argmax_n: list
    skipped: list
    caveat: str

    def to_json(self):
        return asdict(self)


def annulus_at_boundary(k: int, s: float) -> Annulus:
    """Annulus with inner radius 1 - 1/k and hyperbolic measure s."""
    a = 1.0 - 1.0 / k
    b2 = 1.0 - 1.0 / (1.0 / (1.0 - a * a) + s / math.pi)
    return Annulus(a, math.sqrt(b2))


def annuli_infimum_demo(alpha: float, s: float, k_max: int = 64, N: int | None = None) -> AnnuliReport:
    """sup_f R over annuli of hyperbolic measure s pushed towards the boundary circle."""
    if not s > 0:
        raise ValueError("s must be positive")
    N = 8 * k_max if N is None else N
    ks, radii, sups, arg, skipped = [], [], [], [], []
    for k in range(2, k_max + 1):
        try:
            ann = annulus_at_boundary(k, s)
        except ValueError:
            skipped.append(k)
            continue
        lam = radial_eigenvalues(ann.r_in, ann.r_out, alpha, N)
        ks.append(k)
        radii.append([ann.r_in, ann.r_out])
        sups.append(float(lam.max()))
        arg.append(int(lam.argmax()))
    caveat = f"sup over f restricted to span(e_0..e_{N - 1}); maximiser index reported per annulus"
    return AnnuliReport(float(alpha), float(s), N, ks, radii, sups, arg, skipped, caveat)
