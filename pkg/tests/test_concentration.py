import math

import numpy as np
import pytest
from scipy import integrate as spi

from hypercon.bergman import BergmanFunctionDisc, KernelSpecDisc, UsageError, kernel_disc
from hypercon.concentration import (
    c_delta_beta,
    concentration_ratio,
    kernel_cosine,
    random_disc_union,
    random_polygon,
    random_rectangle,
    random_superlevel_mask,
    random_unit_function,
    sup_concentration,
    theta,
    theta_prime,
)
from hypercon.domains import (
    Annulus,
    DivergentMeasureError,
    FullDisc,
    Mask,
    PHDisc,
    Rectangle,
    centered_disc,
    centered_disc_of_measure,
)


def test_theta_values():
    assert theta(0.0, 1.0) == 0.0
    assert theta(math.pi, 0.0) == pytest.approx(0.5, abs=1e-15)
    s = np.linspace(0, 50, 101)
    th = theta(s, 0.5)
    assert np.all(np.diff(th) > 0) and th[-1] < 1
    assert theta(1e12, 0.0) == pytest.approx(1.0, abs=1e-11)
    with pytest.raises(ValueError):
        theta(-1.0, 0.0)


@pytest.mark.parametrize("alpha", [-0.5, 0.0, 2.5])
def test_theta_prime(alpha):
    h = 1e-6
    for s in (0.0, 1.0, 7.0):
        fd = (theta(s + h, alpha) - theta(max(s - h, 0.0), alpha)) / (h + min(h, s))
        assert theta_prime(s, alpha) == pytest.approx(fd, rel=1e-6)
    assert theta_prime(0.0, alpha) == pytest.approx((1 + alpha) / math.pi)


def test_theta_is_R_of_constant_on_centered_disc():
    # oracle: radial quadrature of (1 - r^2)^alpha over B_r with r = 1/sqrt(2)
    for a in (-0.5, 0.0, 1.0):
        r = 1 / math.sqrt(2)
        num = 2 * spi.quad(lambda t: t * (1 - t * t) ** a, 0, r)[0]
        den = 2 * spi.quad(lambda t: t * (1 - t * t) ** a, 0, 1)[0]
        assert num / den == pytest.approx(theta(math.pi, a), rel=1e-12)


def test_concentration_ratio_basics(rng):
    f = random_unit_function(12, 1.0, rng)
    assert concentration_ratio(f, FullDisc()) == pytest.approx(1.0, rel=1e-12)
    one = BergmanFunctionDisc(1.0, [1.0])
    r = 0.6
    assert concentration_ratio(one, centered_disc(r)) == pytest.approx(1 - (1 - r * r) ** 2, rel=1e-13)
    with pytest.raises(UsageError):
        concentration_ratio(BergmanFunctionDisc(1.0, [0.0]), FullDisc())


def test_ratio_on_grid_mask(grid_cache, rng):
    a = 0.0
    g = grid_cache(a)
    f = random_unit_function(10, a, rng)
    exact = concentration_ratio(f, centered_disc(0.5))
    masked = concentration_ratio(f, centered_disc(0.5), grid=g)
    assert masked == pytest.approx(exact, abs=0.05)


def test_kernel_on_disc_is_extremal():
    for a in (-0.5, 0.0, 1.0, 2.5):
        for w in (0.0, 0.5 - 0.3j, 0.7j):
            k, _ = kernel_disc(KernelSpecDisc(a, w), 64)
            R = concentration_ratio(k, PHDisc(w, 2.0))
            assert R == pytest.approx(theta(2.0, a), abs=1e-4)


def test_sup_concentration_disc_and_union():
    rep = sup_concentration(centered_disc_of_measure(math.pi), 0.0, 32)
    assert rep.R == pytest.approx(0.5, abs=1e-12)
    assert rep.extremal
    assert abs(rep.eigvec_head[0][0]) == pytest.approx(1.0, abs=1e-10)
    js = rep.to_json()
    assert js["status"] == "extremal"
    rep2 = sup_concentration(PHDisc(0.3 + 0.4j, math.pi), 1.0, 48)
    assert rep2.gap == pytest.approx(0.0, abs=1e-10)
    assert rep2.kernel_cosine > 1 - 1e-10
    rng = np.random.default_rng(3)
    rep3 = sup_concentration(random_disc_union(rng, 2.0), 0.0, 32)
    assert rep3.gap > 1e-3 and not rep3.extremal
    with pytest.raises(DivergentMeasureError):
        sup_concentration(FullDisc(), 0.0, 8)


def test_kernel_cosine_detects_center():
    k, _ = kernel_disc(KernelSpecDisc(0.0, 0.3), 20)
    assert kernel_cosine(k.coeffs, 0.3, 0.0) == pytest.approx(1.0)
    assert kernel_cosine(k.coeffs, -0.3, 0.0) < 0.9


def test_c_delta_beta_reduction():
    d = PHDisc(1j, 4 * math.pi, "halfplane")
    rep = c_delta_beta(d, 0.5, 32)
    assert rep.R == pytest.approx(0.5, abs=1e-5)
    assert rep.beta == 0.5 and rep.alpha == 0.0
    assert rep.params["nu"] == pytest.approx(4 * math.pi)
    # a very large rectangle captures almost all mass of the top eigenfunction
    big = c_delta_beta(Rectangle(-400.0, 400.0, 1e-3, 1e3, n_x=96, n_s=96, x_panels=8), 1.0, 16)
    assert big.R > 0.99
    with pytest.raises(UsageError):
        c_delta_beta(centered_disc(0.3), 1.0)


def test_c_delta_beta_tau_invariance():
    r = Rectangle(-0.5, 0.7, 0.4, 1.9)
    for w in (2 + 0.5j, -1 + 3j):
        a = c_delta_beta(r, 1.0, None)
        b = c_delta_beta(r.tau(w), 1.0, None)
        assert a.params["converged"] and b.params["converged"]
        assert a.R == pytest.approx(b.R, abs=1e-9)
    # a fixed small basis is visibly truncated once tau pushes the domain outwards
    assert abs(c_delta_beta(r.tau(2 + 0.5j), 1.0, 32).R - a.R) > 1e-5


def test_random_domains_have_target_measure(grid_cache):
    rng = np.random.default_rng(11)
    for s in (0.5, 3.0):
        assert random_disc_union(rng, s).hyperbolic_measure() == pytest.approx(s, abs=1e-8)
        assert random_rectangle(rng, s).hyperbolic_measure() == pytest.approx(s, rel=1e-12)
        assert random_polygon(rng, s).hyperbolic_measure() == pytest.approx(s, abs=1e-8)
    g = grid_cache(0.0)
    m = random_superlevel_mask(rng, 1.0, g)
    assert isinstance(m, Mask)
    assert m.hyperbolic_measure() == pytest.approx(1.0, abs=g.w_hyp.max())


def test_annulus_gap_positive():
    s = 1.5
    r_in = 0.3
    ann = Annulus(r_in, math.sqrt(1 - 1 / (1 / (1 - r_in ** 2) + s / math.pi)))
    rep = sup_concentration(ann, 1.0, 48)
    assert rep.s == pytest.approx(s)
    assert rep.gap > 1e-3 * rep.theta
