import numpy as np
import pytest

from stkrr import fit_spectrum_rate, rate_fit
from stkrr.rates import default_gammas, expected_exponent


def test_expected_exponents():
    assert expected_exponent("poly", 1) == pytest.approx(2 / 3)
    assert expected_exponent("poly", 2) == pytest.approx(0.8)
    assert expected_exponent("exp", 0.5) == 1.0


@pytest.mark.parametrize("alpha", [1.0, 2.0])
def test_poly_slope(alpha):
    fit = rate_fit("poly", alpha, 4096, default_gammas())
    target = 2 * alpha / (2 * alpha + 1)
    assert fit.reliable
    assert abs(fit.slope - target) <= 0.1 * target
    assert abs(fit.lambda_slope - target) <= 0.1 * target


def test_poly_alpha1_window():
    fit = rate_fit("poly", 1.0, 4096, 2.0 ** -np.arange(6, 21))
    assert 0.60 <= fit.slope <= 0.73


def test_exp_decay_log_corrected_slope():
    fit = rate_fit("exp", 1.0, 2048, default_gammas())
    assert fit.reliable
    assert fit.slope == pytest.approx(1.0, abs=0.1)


def test_flat_spectrum_flagged():
    assert not fit_spectrum_rate(np.ones(64), default_gammas()).reliable


@pytest.mark.parametrize("gammas", [[1e-2, 1e-3, 1e-4], [1e-3, 2e-3, 4e-3, 8e-3, 1.6e-2]])
def test_degenerate_sweep(gammas):
    with pytest.raises(ValueError):
        fit_spectrum_rate(np.arange(1, 50.0) ** -2, gammas)
