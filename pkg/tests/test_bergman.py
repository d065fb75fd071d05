import math

import numpy as np
import pytest

from hypercon import geometry as geo
from hypercon.bergman import (
    BergmanFunctionDisc,
    EigenSolverError,
    KernelSpecDisc,
    ToeplitzMatrix,
    UsageError,
    basis_values,
    halfplane_kernel,
    halfplane_norm_sq,
    inner_product_alpha,
    kernel_disc,
    kernel_norm_sq,
    kernel_tail,
    kernel_value,
    radial_eigenvalues,
    t_alpha_inverse,
    t_alpha_map,
    toeplitz_matrix,
    top_eigenpair,
)
from hypercon.domains import EuclideanDisc, Mask, centered_disc
from hypercon.specfun import c_monomial


def test_basis_is_orthonormal(grid_cache):
    for a in (-0.5, 1.0):
        g = grid_cache(a)
        E = basis_values(g.nodes, 40, a)
        G = E.conj().T @ (g.w_alpha[:, None] * E)
        assert np.max(np.abs(G - np.eye(40))) < 1e-12


def test_function_norm_and_eval(grid_cache, rng):
    a = 0.0
    f = BergmanFunctionDisc(a, rng.standard_normal(12) + 1j * rng.standard_normal(12))
    g = grid_cache(a)
    assert inner_product_alpha(f, f, g).real == pytest.approx(f.norm() ** 2, rel=1e-12)
    assert f.normalized().norm() == pytest.approx(1.0)
    # Horner against direct sums
    z = 0.3 - 0.4j
    direct = sum(c * z ** n / math.sqrt(c_monomial(n, a)) for n, c in enumerate(f.coeffs))
    assert f(z) == pytest.approx(direct)
    with pytest.raises(geo.GeometryError):
        f(1.2)
    with pytest.raises(UsageError):
        BergmanFunctionDisc(a, np.zeros(3)).normalized()


def test_from_monomials():
    f = BergmanFunctionDisc.from_monomials(1.0, [1.0, 0.0, 2.0])
    z = 0.2 + 0.1j
    assert f(z) == pytest.approx(1 + 2 * z * z)


@pytest.mark.parametrize("alpha", [-0.5, 0.0, 1.0, 2.5])
def test_kernel_closed_form(alpha):
    w = 0.5 + 0.3j
    k, ev = kernel_disc(KernelSpecDisc(alpha, w), 200)
    z = np.array([0.1, -0.4j, 0.3 + 0.3j])
    assert np.allclose(k(z), ev(z), rtol=1e-12)
    assert k.norm() ** 2 + kernel_tail(w, alpha, 200) == pytest.approx(kernel_norm_sq(w, alpha), rel=1e-12)
    assert kernel_value(w, w, alpha).real == pytest.approx(kernel_norm_sq(w, alpha))
    with pytest.raises(geo.GeometryError):
        KernelSpecDisc(alpha, 1.0)


def test_reproducing_property(grid_cache, rng):
    a = 1.0
    g = grid_cache(a)
    f = BergmanFunctionDisc(a, rng.standard_normal(10) + 0j)
    w = -0.2 + 0.5j
    val = inner_product_alpha(f, lambda z: kernel_value(w, z, a), g)
    assert val == pytest.approx(f(w), abs=1e-10)


def test_inner_product_errors(grid_cache):
    f = BergmanFunctionDisc(0.0, [1.0])
    h = BergmanFunctionDisc(1.0, [1.0])
    with pytest.raises(UsageError):
        inner_product_alpha(f, h)
    with pytest.raises(UsageError):
        inner_product_alpha(f, lambda z: z)
    with pytest.raises(UsageError):
        inner_product_alpha(h, h, grid_cache(0.0))


def test_t_alpha_roundtrip_and_isometry(grid_cache):
    a = 1.0
    w0 = 0.5 + 2j
    F = lambda z: halfplane_kernel(w0, z, a)
    T = t_alpha_map(F, a)
    back = t_alpha_inverse(T, a)
    z = np.array([0.3 + 1j, -2 + 0.1j])
    assert np.allclose(back(z), F(z))
    g = grid_cache(a)
    from hypercon.quadrature import integrate

    disc = integrate(np.abs(T(g.nodes)) ** 2, g, "alpha")
    hp = halfplane_norm_sq(F, a, g)
    # ||T F|| / ||F|| is a fixed constant 2**(alpha/2 - 1)
    assert math.sqrt(disc / hp) == pytest.approx(2 ** (a / 2 - 1), rel=1e-9)


def test_toeplitz_centered_disc_diagonal():
    a = 0.0
    M = toeplitz_matrix(centered_disc(0.6), a, 16)
    lam = radial_eigenvalues(0.0, 0.6, a, 16)
    assert np.allclose(np.diag(M.entries).real, lam, atol=1e-14)
    assert np.max(np.abs(M.entries - np.diag(np.diag(M.entries)))) < 1e-14
    assert M.hermitian_defect() == 0
    back = ToeplitzMatrix.from_json(M.to_json())
    assert np.allclose(back.entries, M.entries)


def test_toeplitz_psd_and_bounded():
    M = toeplitz_matrix(EuclideanDisc(0.3 + 0.1j, 0.4), 1.0, 24)
    ev = np.linalg.eigvalsh(M.entries)
    assert ev.min() > -1e-13 and ev.max() < 1


def test_mask_grid_too_coarse(grid_cache):
    g = grid_cache(0.0, 16, 32)
    with pytest.raises(UsageError):
        toeplitz_matrix(Mask.from_domain(g, centered_disc(0.5)), 0.0, 32)


def test_top_eigenpair_against_eigvalsh():
    rng = np.random.default_rng(5)
    for N in (4, 16, 48):
        A = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
        A = A @ A.conj().T
        lam, v, res = top_eigenpair(A)
        assert lam == pytest.approx(np.linalg.eigvalsh(A)[-1], rel=1e-10)
        assert res < 1e-8 * lam
    lam, v, res = top_eigenpair(np.zeros((3, 3)))
    assert lam == 0


def test_top_eigenpair_raises_on_failure():
    A = np.eye(3) * np.nan
    with pytest.raises(EigenSolverError):
        top_eigenpair(A, max_iter=50)


def test_radial_eigenvalues_closed_form():
    # alpha = 0, centred disc: lambda_n = r^(2n+2)
    lam = radial_eigenvalues(0.0, 0.7, 0.0, 10)
    assert np.allclose(lam, 0.49 ** (np.arange(10) + 1), rtol=1e-13)
    ann = radial_eigenvalues(0.3, 0.7, 0.0, 5)
    assert np.allclose(ann, 0.49 ** (np.arange(5) + 1) - 0.09 ** (np.arange(5) + 1))
