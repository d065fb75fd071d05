import math

import numpy as np
import pytest

from hypercon.domains import Annulus, EuclideanDisc, centered_disc
from hypercon.lebesgue import (
    annuli_infimum_demo,
    annulus_at_boundary,
    constant_function_bound,
    escape_demo,
    escape_radius,
    lebesgue_min_check,
    stated_bound,
    stated_minimizer,
    theta1,
    theta1_integral,
    theta2,
    theta2_integral,
)
from hypercon.bergman import toeplitz_matrix


def test_theta1_example():
    assert theta1(math.pi / 2, -0.5) == pytest.approx(2 * (1 - 1 / math.sqrt(2)), abs=1e-14)


def test_theta2_example():
    # 2 int_{1/sqrt2}^1 t (1 - t^2) dt = [-(1 - t^2)^2 / 2] = 1/8
    assert theta2(math.pi / 2, 1.0) == pytest.approx(0.125, abs=1e-14)


@pytest.mark.parametrize("alpha", [-0.9, -0.5, 0.0, 0.5, 1.0, 3.0])
def test_closed_forms_match_integrals(alpha):
    for s in np.linspace(0.05, 3.1, 9):
        assert abs(theta1(s, alpha) - theta1_integral(s, alpha)) < 1e-10
        assert abs(theta2(s, alpha) - theta2_integral(s, alpha)) < 1e-10


def test_theta_limits_full_disc():
    for a in (-0.5, 1.0):
        full = 1 / (1 + a)
        assert theta1(math.pi * (1 - 1e-12), a) == pytest.approx(full, rel=1e-6)
        assert theta2(math.pi * (1 - 1e-12), a) == pytest.approx(full, rel=1e-6)


def test_domain_errors():
    with pytest.raises(ValueError):
        theta1(0.0, -0.5)
    with pytest.raises(ValueError):
        theta2(4.0, 1.0)


def test_constant_function_bound_is_R_of_one():
    s = 1.2
    for a in (-0.5, 0.0, 1.0):
        dom = stated_minimizer(a, s)
        R1 = float(np.real(toeplitz_matrix(dom, a, 1).entries[0, 0]))
        assert R1 == pytest.approx(constant_function_bound(a, s), rel=1e-12)
    assert stated_bound(0.0, s) == s


def test_negative_alpha_minimizer():
    s = math.pi / 2
    rho = math.sqrt(s / math.pi)
    rep = lebesgue_min_check(-0.5, s, [EuclideanDisc(0.2, rho), Annulus(0.3, math.sqrt(0.09 + 0.5))])
    assert rep.minimizer_attains and rep.others_exceed and rep.passed
    with pytest.raises(ValueError):
        lebesgue_min_check(-0.5, s, [centered_disc(0.2)])


def test_zero_alpha_radial_ties():
    s = 1.0
    r_in = 0.4
    rep = lebesgue_min_check(0.0, s, [Annulus(r_in, math.sqrt(r_in ** 2 + s / math.pi))])
    assert rep.minimizer_sup == pytest.approx(s / math.pi, abs=1e-12)
    assert rep.passed


def test_positive_alpha_outer_annulus_escapes():
    # the outer annulus carries monomials of high degree: sup R is close to 1
    s = math.pi / 2
    rep = lebesgue_min_check(1.0, s, [])
    assert rep.minimizer_sup > 0.99
    assert not rep.minimizer_attains
    assert "monomials" in rep.note


def test_escape_sequence():
    e = escape_demo(0.0, r=0.9)
    assert e.first_n_above == 21
    assert e.R[0] == pytest.approx(1 - 0.81)
    assert all(m <= b + 1e-15 for m, b in zip(e.inner_mass, e.polar_bound))
    assert e.polar_bound[-1] < 1e-40
    e2 = escape_demo(1.0, s_lebesgue=1.0, n_max=100)
    assert e2.r == pytest.approx(escape_radius(1.0))
    assert e2.R[0] == pytest.approx((1 - e2.r ** 2) ** 2, rel=1e-12)
    with pytest.raises(ValueError):
        escape_demo(0.0)


def test_annuli_sequence():
    rep = annuli_infimum_demo(0.0, 1.0, 64)
    assert rep.k[0] == 2
    assert all(b < a for a, b in zip(rep.sup_R, rep.sup_R[1:]))
    assert rep.sup_R[-1] < 0.05
    ann = annulus_at_boundary(10, 1.0)
    assert ann.hyperbolic_measure() == pytest.approx(1.0, rel=1e-12)
    M = toeplitz_matrix(ann, 0.0, 12).entries
    assert np.max(np.abs(M - np.diag(np.diag(M)))) < 1e-12
    lam = np.linalg.eigvalsh(M)
    assert lam[-1] == pytest.approx(np.max(np.diag(M).real), abs=1e-12)
