"""Special functions and closed-form constants.

Everything here is scalar-or-numpy and pure.  Constants that involve
ratios of Gamma functions are assembled in log space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special


class DomainError(ValueError):
    """Argument outside the domain of a special function."""


@dataclass(frozen=True)
class LaguerreParams:
    n: int
    alpha: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"Laguerre degree must be a nonnegative integer, got {self.n}")
        if not self.alpha > -1:
            raise DomainError(f"Laguerre order must exceed -1, got {self.alpha}")


def gamma_ln(x):
    """Natural log of the Gamma function for ``x > 0``."""
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)):
        raise DomainError("gamma_ln requires x > 0")
    out = special.gammaln(x)
    return float(out) if out.ndim == 0 else out


def laguerre(p: LaguerreParams, x):
    """Generalized Laguerre polynomial L_n^alpha(x) by forward recurrence.

    (k+1) L_{k+1} = (2k+1+alpha-x) L_k - (k+alpha) L_{k-1}
    """
    x = np.asarray(x, dtype=float)
    a = p.alpha
    prev = np.ones_like(x)
    if p.n == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + a - x
    for k in range(1, p.n):
        prev, cur = cur, ((2 * k + 1 + a - x) * cur - (k + a) * prev) / (k + 1)
    return cur if cur.ndim else float(cur)


def laguerre_table(nmax: int, alpha: float, x) -> np.ndarray:
    """All L_k^alpha(x) for k = 0..nmax, stacked along the first axis."""
    LaguerreParams(nmax, alpha)
    x = np.asarray(x, dtype=float)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = 1.0 + alpha - x
    for k in range(1, nmax):
        out[k + 1] = ((2 * k + 1 + alpha - x) * out[k] - (k + alpha) * out[k - 1]) / (k + 1)
    return out


_CF_TINY = 1e-300


def _betacf(x: float, a: float, b: float, maxiter: int = 500, eps: float = 1e-16) -> float:
    # Modified Lentz evaluation of the incomplete beta continued fraction.
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_TINY:
        d = _CF_TINY
    d = 1.0 / d
    h = d
    for m in range(1, maxiter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = _CF_TINY if abs(d) < _CF_TINY else d
        c = 1.0 + aa / c
        c = _CF_TINY if abs(c) < _CF_TINY else c
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = _CF_TINY if abs(d) < _CF_TINY else d
        c = 1.0 + aa / c
        c = _CF_TINY if abs(c) < _CF_TINY else c
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            return h
    raise ArithmeticError(f"incomplete beta continued fraction did not converge (x={x}, a={a}, b={b})")


def reg_inc_beta(x: float, a: float, b: float) -> float:
    """Regularized incomplete beta function I_x(a, b)."""
    if not (0.0 <= x <= 1.0):
        raise DomainError(f"reg_inc_beta needs x in [0, 1], got {x}")
    if not (a > 0 and b > 0):
        raise DomainError("reg_inc_beta needs a > 0 and b > 0")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    log_front = (
        gamma_ln(a + b) - gamma_ln(a) - gamma_ln(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(x, a, b) / a
    return 1.0 - front * _betacf(1.0 - x, b, a) / b


def log_c_monomial(n, alpha: float):
    """log c_n with c_n = pi Gamma(alpha+1) Gamma(n+1) / Gamma(n+alpha+2)."""
    n = np.asarray(n, dtype=float)
    return math.log(math.pi) + gamma_ln(alpha + 1.0) + gamma_ln(n + 1.0) - gamma_ln(n + alpha + 2.0)


def c_monomial(n, alpha: float):
    """Squared A_alpha(D) norm of z**n."""
    if not alpha > -1:
        raise DomainError(f"alpha must exceed -1, got {alpha}")
    out = np.exp(log_c_monomial(n, alpha))
    return float(out) if np.ndim(out) == 0 else out


def window_norm_constant(beta: float) -> float:
    """c_beta with c_beta**2 = int_0^inf t**(2 beta - 1) exp(-2t) dt = Gamma(2 beta) / 4**beta.

    This is the constant that makes the window t**beta exp(-t) / c_beta have
    unit norm in L^2(R+, dt/t).
    """
    if not beta > 0:
        raise DomainError(f"beta must be positive, got {beta}")
    return math.exp(0.5 * (gamma_ln(2.0 * beta) - 2.0 * beta * math.log(2.0)))
