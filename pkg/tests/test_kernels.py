import numpy as np
import pytest
import sympy

from stkrr import DesignPoints, DomainError, KernelSpec, eigendecompose, eval_kernel, kernel_matrix, make_design
from stkrr.kernels import Scheme


def test_gaussian_identity():
    assert eval_kernel(KernelSpec.gaussian(0.1), 0.5, 0.5) == 1.0


def test_sobolev_min():
    assert eval_kernel(KernelSpec.sobolev1(), 0.3, 0.7) == 0.3


def test_gaussian_one_bandwidth_apart():
    # exp(-0.1^2 / (2 * 0.1^2))
    assert eval_kernel(KernelSpec.gaussian(0.1), 0.0, 0.1) == pytest.approx(0.6065306597126334, rel=1e-14)


def test_outside_domain():
    with pytest.raises(DomainError):
        eval_kernel(KernelSpec.sobolev1(), -0.1, 0.5)
    with pytest.raises(DomainError):
        eval_kernel(KernelSpec.gaussian(0.1), 0.0, 1.5)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(kind="gaussian", domain=(-1, 1), bandwidth=0.0),
        dict(kind="gaussian", domain=(-1, 1)),
        dict(kind="sobolev1", domain=(-1, 1)),
        dict(kind="sobolev1", domain=(1, 1)),
        dict(kind="laplace", domain=(0, 1)),
    ],
)
def test_spec_validation(kwargs):
    with pytest.raises(ValueError):
        KernelSpec(**kwargs)


def test_kernel_symmetric(rng):
    for spec in (KernelSpec.gaussian(0.3), KernelSpec.sobolev1()):
        a, b = spec.domain
        for s, t in rng.uniform(a, b, (200, 2)):
            assert eval_kernel(spec, s, t) == eval_kernel(spec, t, s)


@pytest.mark.parametrize(
    "domain, n, scheme, expected",
    [
        ((0, 1), 4, "open-left", [0.25, 0.5, 0.75, 1.0]),
        ((-1, 1), 3, "closed", [-1.0, 0.0, 1.0]),
        ((0, 1), 2, "closed", [0.0, 1.0]),
    ],
)
def test_make_design(domain, n, scheme, expected):
    spec = KernelSpec.gaussian(1.0, domain)
    np.testing.assert_allclose(make_design(spec, n, scheme).x, expected, rtol=0, atol=1e-15)


def test_default_schemes():
    assert KernelSpec.sobolev1().default_scheme is Scheme.OPEN_LEFT
    assert KernelSpec.gaussian().default_scheme is Scheme.CLOSED
    assert make_design(KernelSpec.sobolev1(), 5).x[0] > 0


def test_design_too_small():
    with pytest.raises(ValueError):
        make_design(KernelSpec.sobolev1(), 1)


def test_design_must_increase():
    with pytest.raises(ValueError):
        DesignPoints([0.5, 0.5])


def test_kernel_matrix_small():
    K = kernel_matrix(KernelSpec.sobolev1(), DesignPoints([0.5, 1.0]))
    np.testing.assert_array_equal(K, 0.5 * np.array([[0.5, 0.5], [0.5, 1.0]]))
    K1 = kernel_matrix(KernelSpec.gaussian(1.0), DesignPoints([0.0]))
    np.testing.assert_array_equal(K1, [[1.0]])


def test_kernel_matrix_eigs_against_charpoly():
    x = [sympy.Rational(1, 3), sympy.Rational(2, 3), sympy.Integer(1)]
    M = sympy.Matrix(3, 3, lambda i, j: sympy.Min(x[i], x[j]) / 3)
    lam = sympy.Symbol("lam")
    roots = sorted((complex(r).real for r in sympy.Poly(M.charpoly(lam)).nroots(n=30)), reverse=True)
    K = kernel_matrix(KernelSpec.sobolev1(), DesignPoints([1 / 3, 2 / 3, 1.0]))
    np.testing.assert_allclose(eigendecompose(K).mu, roots, rtol=1e-12)


@pytest.mark.parametrize("spec", [KernelSpec.sobolev1(), KernelSpec.gaussian(0.1), KernelSpec.gaussian(1.0)])
def test_kernel_matrix_psd(spec, rng):
    K = kernel_matrix(spec, make_design(spec, 100))
    np.testing.assert_array_equal(K, K.T)
    mu1 = np.linalg.eigvalsh(K)[-1]
    V = rng.standard_normal((1000, 100))
    quad = np.einsum("ij,jk,ik->i", V, K, V)
    assert np.all(quad >= -1e-10 * np.sum(V**2, axis=1) * mu1)


@pytest.mark.parametrize("n, b", [(5, 0.5), (10, 1.0), (20, 0.3)])
def test_gaussian_positive_definite(n, b):
    spec = KernelSpec.gaussian(b)
    E = eigendecompose(kernel_matrix(spec, make_design(spec, n)))
    assert E.mu[-1] > 0


def test_sobolev_open_left_positive_definite():
    spec = KernelSpec.sobolev1()
    for n in (2, 10, 200):
        E = eigendecompose(kernel_matrix(spec, make_design(spec, n)))
        assert E.mu[-1] > 0


def test_sobolev_closed_grid_is_singular():
    spec = KernelSpec.sobolev1()
    E = eigendecompose(kernel_matrix(spec, make_design(spec, 10, "closed")))
    assert E.mu[-1] == pytest.approx(0.0, abs=1e-15)
