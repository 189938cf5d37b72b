import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stkrr import (
    DegenerateSpectrumError,
    EigenSystem,
    NoiseModel,
    PreconditionError,
    critical_radius,
    estimation_error,
    h,
    kernel_complexity,
    max_mse,
    regularized_risk_sup,
    statistical_dimension,
    wae,
    wae_upper,
    weak_bound,
)
from stkrr.risk import StatisticalDimensionWarning

from conftest import random_spectrum

pos = st.floats(1e-8, 1e4, allow_nan=False)


def test_h_values():
    assert h(0.8, 0.8) == pytest.approx(0.2)
    assert h(0.5, 0.0) == 0.0
    assert h(1.0, 3.0) == 0.1875


@settings(max_examples=500, deadline=None)
@given(lam=pos, x=st.floats(0, 1e4))
def test_h_bounded_by_quarter_lambda(lam, x):
    assert h(lam, x) <= lam / 4 * (1 + 1e-12)
    assert h(lam, lam) == pytest.approx(lam / 4, rel=1e-12)


def test_h_bound_sweep(rng):
    lam = 10 ** rng.uniform(-8, 4, 10_000)
    x = 10 ** rng.uniform(-10, 5, 10_000)
    assert np.all(h(lam, x) <= lam / 4 * (1 + 1e-12))
    np.testing.assert_allclose(h(lam, lam), lam / 4, rtol=1e-12)


def test_wae_values():
    assert wae([1.0], 1, 1.0) == 0.25
    assert wae([4.0, 1.0], 1, 2.0) == 1.0
    mu = [4.0, 1.0, 0.3]
    assert wae(mu, 3, 0.5) == max(h(0.5, m) for m in mu)
    with pytest.raises(ValueError):
        wae(mu, 4, 0.5)


def test_estimation_error_values():
    assert estimation_error([1.0, 0.5], 2, 0.3, NoiseModel(0.0, 5)) == 0.0
    assert estimation_error([1.0, 1.0], 2, 1.0, NoiseModel(2.0, 2)) == 0.5
    mu = np.array([1.0, 0.1, 0.01])
    assert estimation_error(mu, 3, 1e-12, NoiseModel(1.0, 4)) == pytest.approx(3 / 4, rel=1e-9)


def test_estimation_error_monotone(rng):
    noise = NoiseModel(4.0, 50)
    for _ in range(50):
        mu = random_spectrum(rng, 50)
        lam = 10 ** rng.uniform(-6, 0)
        ee = [estimation_error(mu, r, lam, noise) for r in range(1, 51)]
        assert np.all(np.diff(ee) >= 0)
        r = int(rng.integers(1, 51))
        ees = [estimation_error(mu, r, l, noise) for l in np.geomspace(1e-6, 1, 30)]
        assert np.all(np.diff(ees) <= 0)


def test_max_mse_composition():
    p = max_mse([1.0, 1.0], 2, 1.0, NoiseModel(2.0, 2))
    assert (p.wae, p.ee, p.max_mse) == (0.25, 0.5, 0.75)
    assert p.max_mse == p.wae + p.ee


def test_max_mse_radius_scaling():
    mu, noise = [0.5, 0.2, 0.05], NoiseModel(1.0, 3)
    R = 3.0
    p = max_mse(mu, 2, 0.1, noise, radius=R)
    assert p.wae == pytest.approx(R**2 * wae(mu, 2, 0.1))
    assert p.ee == pytest.approx(estimation_error(mu, 2, 0.1, noise))


def test_max_mse_basis_invariant(rng):
    mu = random_spectrum(rng, 6)
    Q1, _ = np.linalg.qr(rng.standard_normal((6, 6)))
    Q2, _ = np.linalg.qr(rng.standard_normal((6, 6)))
    noise = NoiseModel(1.0, 6)
    a = max_mse(EigenSystem(mu.copy(), Q1), 3, 0.01, noise)
    b = max_mse(EigenSystem(mu.copy(), Q2), 3, 0.01, noise)
    assert a == b


def test_max_mse_against_ellipsoid_sampling(rng):
    # sup over v^T D^-1 v <= 1 of ||(I - Gamma) v||^2, sampled on the ellipsoid boundary
    mu = np.array([0.9, 0.3, 0.08, 0.01])
    lam, r, noise = 0.05, 2, NoiseModel(1.0, 4)
    shrink = np.zeros(4)
    shrink[:r] = mu[:r] / (mu[:r] + lam)
    s = rng.standard_normal((200_000, 4))
    s /= np.linalg.norm(s, axis=1, keepdims=True)
    v = s * np.sqrt(mu)
    brute = np.max(np.sum(((1 - shrink) * v) ** 2, axis=1)) + estimation_error(mu, r, lam, noise)
    exact = max_mse(mu, r, lam, noise).max_mse
    assert brute <= exact * (1 + 1e-12)
    assert brute >= 0.99 * exact


def test_wae_upper_values():
    assert wae_upper(1.0, 0.0) == 0.25
    assert wae_upper(0.1, 0.5) == 0.5


def test_wae_upper_dominates(rng):
    for _ in range(1000):
        mu = random_spectrum(rng, int(rng.integers(1, 30)))
        r = int(rng.integers(1, mu.size + 1))
        lam = 10 ** rng.uniform(-7, 1)
        mu_next = mu[r] if r < mu.size else 0.0
        assert wae_upper(lam, mu_next) >= wae(mu, r, lam)


def test_regularized_risk_values():
    assert regularized_risk_sup([1.0], 1, 1.0) == 0.5
    assert regularized_risk_sup([4.0, 1.0], 1, 2.0) == pytest.approx(4 / 3)


def test_regularized_risk_operator_norm_oracle(rng):
    for _ in range(200):
        mu = random_spectrum(rng, 5)
        r = int(rng.integers(1, 6))
        lam = 10 ** rng.uniform(-6, 1)
        g = np.zeros(5)
        g[:r] = mu[:r] / (mu[:r] + lam)
        diag = (1 - g) ** 2 * mu + lam * g**2
        assert regularized_risk_sup(mu, r, lam) == pytest.approx(np.max(np.abs(diag)), rel=1e-12)
        assert abs(regularized_risk_sup(mu, r, lam) - regularized_risk_sup(mu, r, lam, closed_form=True)) <= 1e-12


def test_kernel_complexity_values():
    mu = np.array([1.0, 0.04])
    assert kernel_complexity(mu, 2, 0.5, NoiseModel(1.0, 1)) == pytest.approx(0.5385164807134504, rel=1e-14)
    noise = NoiseModel(2.0, 10)
    assert kernel_complexity(mu, 2, 2.0, noise) == pytest.approx(np.sqrt(0.2 * 1.04))
    assert kernel_complexity(mu, 0, 0.3, noise) == 0.0


def test_kernel_complexity_monotone(rng):
    mu = random_spectrum(rng, 40)
    noise = NoiseModel(1.0, 40)
    by_r = [kernel_complexity(mu, r, 0.01, noise) for r in range(41)]
    by_d = [kernel_complexity(mu, 20, d, noise) for d in np.geomspace(1e-4, 2, 40)]
    assert np.all(np.diff(by_r) >= 0) and np.all(np.diff(by_d) >= 0)


def test_weak_bound_noiseless():
    mu = np.array([0.5, 0.02, 0.001])
    assert weak_bound(mu, 1, 0.1, np.sqrt(0.1), NoiseModel(0.0, 3)) == pytest.approx(0.025)


def test_weak_bound_improved_first_term():
    val = weak_bound([1.0, 0.01], 1, 2.0, np.sqrt(2.0), NoiseModel(0.0, 2))
    assert val == pytest.approx(4 / 9)
    assert val < 2.0 / 4


def test_weak_bound_precondition():
    with pytest.raises(PreconditionError):
        weak_bound([1.0, 0.5], 1, 1.0, 0.5, NoiseModel(1.0, 2))
    with pytest.raises(PreconditionError):
        weak_bound([1.0, 0.1], 1, 0.5, 1.0, NoiseModel(1.0, 2))


def test_weak_bound_equal_top_eigenvalues():
    # mu_2 = mu_1: the bare mu_1 lam^2/(lam+mu_1)^2 term would undercut the true WAE
    mu, noise = [1.0, 1.0], NoiseModel(0.0, 2)
    assert weak_bound(mu, 1, 4.0, 1.0, noise) >= max_mse(mu, 1, 4.0, noise).max_mse


def test_critical_radius_single_eigenvalue():
    for gamma in (1e-4, 0.01, 0.2, 0.25):
        d = critical_radius([1.0], NoiseModel(gamma, 1))
        assert d == pytest.approx(2 * np.sqrt(gamma), rel=1e-12)


def test_critical_radius_wide_bracket():
    d = critical_radius([1e-4], NoiseModel(1.0, 1))
    assert abs(d**2 - 2 * kernel_complexity([1e-4], 1, d, NoiseModel(1.0, 1))) <= 1e-10 * d**2


def test_critical_radius_grows_with_noise(sobolev200):
    mu = sobolev200[3].mu
    assert critical_radius(mu, NoiseModel(8.0, 200)) > critical_radius(mu, NoiseModel(4.0, 200))


def test_critical_radius_errors():
    with pytest.raises(DegenerateSpectrumError):
        critical_radius([0.0, 0.0], NoiseModel(1.0, 2))
    with pytest.raises(ValueError):
        critical_radius([1.0], NoiseModel(0.0, 2))


def test_statistical_dimension():
    mu = [1.0, 0.5, 0.1]
    assert statistical_dimension(mu, np.sqrt(0.5)) == 2
    assert statistical_dimension(mu, 1.5) == 1
    with pytest.warns(StatisticalDimensionWarning):
        assert statistical_dimension(mu, 0.1) == 4
