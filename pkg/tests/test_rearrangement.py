import math

import numpy as np
import pytest

from hypercon.bergman import BergmanFunctionDisc, KernelSpecDisc, kernel_disc
from hypercon.concentration import concentration_ratio, random_disc_union, random_unit_function, theta
from hypercon.domains import Mask, PHDisc
from hypercon.rearrangement import (
    hyperbolic_length,
    isoperimetric_audit,
    level_curves,
    level_profile,
    superlevel_domain,
    u_function,
    u_profile,
)


def test_u_of_e0(grid_cache):
    g = grid_cache(0.0)
    u = u_profile(BergmanFunctionDisc.basis(0, 0.0, 1), g)
    assert np.allclose(u, (1 - np.abs(g.nodes) ** 2) ** 2 / math.pi)
    assert u.max() <= 1 / math.pi + 1e-8 and u.min() >= 0


def test_u_bounded_for_random_f(grid_cache, rng):
    for a in (-0.5, 1.0):
        g = grid_cache(a)
        f = random_unit_function(20, a, rng)
        u = u_profile(f, g)
        assert u.max() <= (1 + a) / math.pi + 1e-8
        # outermost ring is close to zero
        assert u.reshape(g.shape)[-1].max() < 1e-3


def test_constant_field_profile(grid_cache):
    g = grid_cache(0.0)
    inside = np.abs(g.nodes) < 0.5
    u = np.where(inside, 2.0, 0.0)
    P = level_profile(u, g)
    m = g.w_hyp[inside].sum()
    assert P.rho(1.0) == pytest.approx(m)
    assert P.rho(2.0) == 0
    for s in (0.1 * m, 0.9 * m, 1.5 * m):
        assert P.I(s) == pytest.approx(2.0 * min(s, m), rel=1e-12)


def test_profile_invariants(grid_cache, rng):
    a = 1.0
    g = grid_cache(a)
    f = random_unit_function(16, a, rng)
    P = level_profile(u_profile(f, g), g)
    s = np.linspace(0, 20, 400)
    I = P.I(s)
    us = P.ustar(s)
    assert I[0] == 0
    assert np.all(np.diff(us) <= 0) and np.all(np.diff(I) >= 0)
    assert np.max(np.diff(I, 2)) <= 1e-8
    t = np.linspace(us[0], 0, 50)
    assert np.all(np.diff(P.rho(t)) >= 0)
    assert P.total_mass == pytest.approx(1.0, rel=1e-10)
    assert P.ustar(0.0) <= (1 + a) / math.pi + 1e-8
    js = P.to_json(s[:5], 7)
    assert len(js["thresholds"]) == 7 and len(js["envelope"]) == 5
    with pytest.raises(ValueError):
        P.I(-1.0)


def test_envelope_for_e0_matches_theta(grid_cache):
    a = 0.0
    g = grid_cache(a, 256, 512)
    P = level_profile(u_profile(BergmanFunctionDisc.basis(0, a, 1), g), g)
    s = np.linspace(0.1, 10, 50)
    assert np.max(np.abs(P.I(s) - theta(s, a))) < 5e-3


def test_superlevel_of_kernel_is_phdisc(grid_cache):
    a = 0.0
    g = grid_cache(a, 256, 512)
    w = 0.4 - 0.2j
    k, _ = kernel_disc(KernelSpecDisc(a, w), 64)
    u = u_profile(k, g)
    s = 2.0
    m = superlevel_domain(u, g, s)
    assert abs(m.hyperbolic_measure() - s) <= g.w_hyp.max()
    ref = PHDisc(w, s).contains(g.nodes)
    sym = np.sum(g.w_hyp[m.mask ^ ref])
    assert sym < 0.02 * s


def test_bathtub(grid_cache, rng):
    a = 0.0
    g = grid_cache(a)
    f = random_unit_function(16, a, rng)
    u = u_profile(f, g)
    best = superlevel_domain(u, g, 1.5)
    s = best.hyperbolic_measure()
    R_best = concentration_ratio(f, best)
    for _ in range(5):
        other = Mask.from_domain(g, random_disc_union(rng, s))
        assert R_best >= concentration_ratio(f, other) - 1e-12
    with pytest.raises(ValueError):
        superlevel_domain(u, g, 1e9)


def test_hyperbolic_length_of_circle():
    r = 0.5
    th = np.linspace(0, 2 * np.pi, 4001)
    L = hyperbolic_length(r * np.exp(1j * th))
    assert L == pytest.approx(2 * np.pi * r / (1 - r * r), rel=1e-6)


def test_audit_circles_and_random(grid_cache, rng):
    a = 0.0
    g = grid_cache(a, 256, 512)
    e0 = BergmanFunctionDisc.basis(0, a, 1)
    P = level_profile(u_profile(e0, g), g)
    rows = isoperimetric_audit(u_function(e0), P, [0.5, 2.0], 512)
    for r in rows:
        assert r.n_curves == 1
        assert abs(r.margin) < 0.01
    f = random_unit_function(16, a, rng)
    P2 = level_profile(u_profile(f, g), g)
    for r in isoperimetric_audit(u_function(f), P2, [0.5, 2.0], 512):
        assert r.margin > -0.05


def test_level_curves_skip_degenerate():
    e0 = BergmanFunctionDisc.basis(0, 0.0, 1)
    assert level_curves(u_function(e0), 10.0, 64) == []
