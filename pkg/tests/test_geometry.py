import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hypercon import geometry as geo

unit = st.floats(-0.95, 0.95)
upper_x = st.floats(-20, 20)
upper_s = st.floats(0.01, 20)


def test_cayley_fixed_points():
    assert geo.cayley_to_disk(1j) == 0
    assert geo.cayley_to_halfplane(0) == pytest.approx(1j)
    with pytest.raises(geo.GeometryError):
        geo.cayley_to_disk(1.0 - 0.1j)
    with pytest.raises(geo.GeometryError):
        geo.cayley_to_halfplane(1.0)


@settings(max_examples=100, deadline=None)
@given(x=upper_x, s=upper_s)
def test_cayley_roundtrip(x, s):
    z = complex(x, s)
    w = geo.cayley_to_disk(z)
    assert abs(w) < 1
    assert geo.cayley_to_halfplane(w) == pytest.approx(z, rel=1e-9, abs=1e-9)


def test_cayley_jacobian_matches_finite_difference():
    z = 0.3 + 0.7j
    h = 1e-6
    dw = (geo.cayley_to_disk(z + h) - geo.cayley_to_disk(z - h)) / (2 * h)
    assert geo.cayley_jacobian(z) == pytest.approx(abs(dw) ** 2, rel=1e-8)


@settings(max_examples=100, deadline=None)
@given(x1=upper_x, s1=upper_s, x2=upper_x, s2=upper_s)
def test_pseudohyperbolic_distance_is_cayley_invariant(x1, s1, x2, s2):
    a, b = complex(x1, s1), complex(x2, s2)
    d_h = geo.pseudohyperbolic_distance(a, b, "halfplane")
    d_d = geo.pseudohyperbolic_distance(geo.cayley_to_disk(a), geo.cayley_to_disk(b), "disc")
    assert d_h == pytest.approx(d_d, abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(a=unit, b=unit, c=unit, d=unit, e=unit, f=unit)
def test_automorphism_preserves_distance(a, b, c, d, e, f):
    w, p, q = complex(a, b) / 1.5, complex(c, d) / 1.5, complex(e, f) / 1.5
    d0 = geo.pseudohyperbolic_distance(p, q)
    d1 = geo.pseudohyperbolic_distance(geo.disc_automorphism(w, p), geo.disc_automorphism(w, q))
    assert d0 == pytest.approx(d1, abs=1e-10)


def test_tau_action():
    w = 2.0 + 0.5j
    assert geo.tau_action(w, w) == pytest.approx(1j)
    z = -1 + 3j
    assert geo.tau_inverse(w, geo.tau_action(w, z)) == pytest.approx(z)
    # tau preserves pseudohyperbolic distance
    a, b = 0.3 + 1j, -2 + 0.2j
    assert geo.pseudohyperbolic_distance(geo.tau_action(w, a), geo.tau_action(w, b), "halfplane") == pytest.approx(
        geo.pseudohyperbolic_distance(a, b, "halfplane"))


def test_centered_disc_measure_roundtrip():
    for s in (0.1, math.pi, 10.0):
        r = geo.centered_radius_from_measure(s)
        assert geo.centered_disc_measure(r) == pytest.approx(s, rel=1e-14)
    assert geo.centered_radius_from_measure(math.pi) == pytest.approx(1 / math.sqrt(2))


@pytest.mark.parametrize("center", [0.0, 0.5 + 0.2j, -0.7j])
def test_pseudohyperbolic_disc_euclidean_form(center):
    D = geo.disc_from_measure(center, 2.0)
    r = D.radius
    # boundary points are at pseudohyperbolic distance r from the centre
    th = np.linspace(0, 2 * np.pi, 17)
    pts = D.euclidean_center + D.euclidean_radius * np.exp(1j * th)
    assert np.allclose(geo.pseudohyperbolic_distance(pts, center), r, atol=1e-12)
    assert D.disc_measure == pytest.approx(2.0)


def test_halfplane_disc_maps_to_disc_model():
    D = geo.disc_from_measure(1.5 + 2j, 1.0, "halfplane")
    Dd = D.to_disc()
    th = np.linspace(0, 2 * np.pi, 9)
    pts = D.euclidean_center + D.euclidean_radius * np.exp(1j * th)
    w = geo.cayley_to_disk(pts)
    assert np.allclose(geo.pseudohyperbolic_distance(w, Dd.center), Dd.radius, atol=1e-12)
    assert D.contains(1.5 + 2j)


def test_point_types():
    p = geo.HalfPlanePoint(1.0, 2.0)
    assert p.z == 1 + 2j
    assert geo.HalfPlanePoint.from_complex(p.z) == p
    with pytest.raises(geo.GeometryError):
        geo.HalfPlanePoint(0.0, -1.0)
    with pytest.raises(geo.GeometryError):
        geo.DiskPoint(1.0, 0.0)
