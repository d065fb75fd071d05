import math

import numpy as np
import pytest
from scipy import integrate as spi

from hypercon.quadrature import (
    build_disk_grid,
    build_frequency_grid,
    integrate,
    pairwise_sum,
)
from hypercon.specfun import DomainError, c_monomial


def test_pairwise_sum_matches_fsum():
    rng = np.random.default_rng(0)
    x = rng.standard_normal(10001) * 1e3
    assert pairwise_sum(x) == pytest.approx(math.fsum(x), abs=1e-9)
    assert pairwise_sum(np.array([])) == 0


@pytest.mark.parametrize("alpha", [-0.5, 0.0, 1.0, 2.5])
def test_grid_integrates_monomial_norms(alpha):
    g = build_disk_grid(32, 64, alpha)
    z = g.nodes
    for n in (0, 5, 20, 31):
        got = integrate(np.abs(z) ** (2 * n), g, "alpha")
        assert got == pytest.approx(c_monomial(n, alpha), rel=1e-12)
    # angular orthogonality
    assert abs(integrate(z ** 3 * np.conj(z) ** 2, g, "alpha")) < 1e-14
    assert g.exactness_degree == 63


def test_grid_measures():
    g = build_disk_grid(64, 16, 0.0)
    assert integrate(np.ones(g.size), g, "lebesgue") == pytest.approx(math.pi, rel=1e-13)
    # mu of the disc is infinite; the node sum is large and finite
    assert np.all(np.isfinite(g.w_hyp)) and g.w_hyp.sum() > 1e3
    mask = np.abs(g.nodes) < 0.5
    assert integrate(np.ones(g.size), g, "lebesgue", mask=mask) == pytest.approx(math.pi * 0.25, rel=0.05)


def test_grid_validation():
    with pytest.raises(DomainError):
        build_disk_grid(2, 8)
    with pytest.raises(DomainError):
        build_disk_grid(8, 8, -1.0)
    g = build_disk_grid(8, 8)
    with pytest.raises(ValueError):
        integrate(np.ones(3), g)
    with pytest.raises(ValueError):
        g.weights("bogus")


def test_frequency_grid_against_quad():
    fg = build_frequency_grid(1.5, 40)
    f = lambda t: np.cos(t) * t ** 1.5 * np.exp(-2 * t)
    ref = spi.quad(f, 0, np.inf)[0]
    got = integrate(f(fg.t) / fg.weight(fg.t), fg)
    assert got == pytest.approx(ref, rel=1e-9)
    fg3 = fg.with_rate(3.0)
    assert integrate(np.ones(fg3.N), fg3) == pytest.approx(math.gamma(2.5) / 3.0 ** 2.5, rel=1e-13)
    with pytest.raises(DomainError):
        build_frequency_grid(0.0, 4)
