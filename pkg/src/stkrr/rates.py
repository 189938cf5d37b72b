"""Empirical convergence rates of the minimized maximum risk.

For a fixed spectrum the tuned risk ``min_lam sup MSE`` is computed over a sweep
of noise levels ``gamma = sigma^2 / n`` and a line is fitted in log-log
coordinates. Polynomial decay ``mu_i ~ i^(-2 alpha)`` should give slope
``2 alpha / (2 alpha + 1)``. Exponential decay should give ``gamma log(1/gamma)``,
so there the abscissa is ``log(gamma log(1/gamma))`` and the expected slope is 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .risk import NoiseModel
from .selection import SearchConfig, minimize_lambda
from .spectral import Decay, as_spectrum, synthetic_spectrum

MIN_SWEEP = 4
MIN_DECADES = 3.0
MIN_R2 = 0.98


@dataclass
class RateFit:
    slope: float  # exponent of the tuned max MSE
    lambda_slope: float  # exponent of the tuned lambda
    intercept: float
    r2: float
    expected: float | None
    reliable: bool
    gammas: np.ndarray
    risks: np.ndarray
    lambdas: np.ndarray

    def to_dict(self) -> dict:
        return {
            "slope": self.slope,
            "lambda_slope": self.lambda_slope,
            "intercept": self.intercept,
            "r2": self.r2,
            "expected": self.expected,
            "reliable": self.reliable,
            "gammas": self.gammas.tolist(),
            "risks": self.risks.tolist(),
            "lambdas": self.lambdas.tolist(),
        }


def expected_exponent(kind: Decay | str, param: float) -> float:
    if Decay(kind) is Decay.POLY:
        return 2.0 * param / (2.0 * param + 1.0)
    return 1.0


def _linfit(x, y):
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss = np.sum((y - y.mean()) ** 2)
    r2 = 1.0 - np.sum(resid**2) / ss if ss > 0 else 0.0
    return float(slope), float(intercept), float(r2)


def fit_spectrum_rate(spectrum, gammas, log_correction: bool = False, search: SearchConfig | None = None) -> RateFit:
    mu = as_spectrum(spectrum)
    gammas = np.sort(np.asarray(gammas, dtype=float))
    if gammas.size < MIN_SWEEP or np.any(gammas <= 0):
        raise ValueError(f"need at least {MIN_SWEEP} positive noise levels")
    if np.log10(gammas[-1] / gammas[0]) < MIN_DECADES:
        raise ValueError(f"noise sweep must span at least {MIN_DECADES:g} decades")
    if log_correction and gammas[-1] >= 1:
        raise ValueError("log-corrected fit needs gamma < 1")
    n = mu.size
    opts = [minimize_lambda(mu, n, NoiseModel(g * n, n), search) for g in gammas]
    risks = np.array([o.risk for o in opts])
    lams = np.array([o.lam for o in opts])
    x = np.log(gammas)
    if log_correction:
        x = x + np.log(np.log(1.0 / gammas))
    slope, intercept, r2 = _linfit(x, np.log(risks))
    lam_slope = _linfit(x, np.log(lams))[0]
    # a flat spectrum has no decay class; its slope says nothing about rates
    flat = mu[-1] >= mu[0] * (1.0 - 1e-12)
    reliable = (not flat) and r2 >= MIN_R2 and not any(o.at_boundary for o in opts)
    return RateFit(slope, lam_slope, intercept, r2, None, bool(reliable), gammas, risks, lams)


def rate_fit(kind: Decay | str, param: float, n: int, gammas, scale: float = 1.0, search: SearchConfig | None = None) -> RateFit:
    """Slope fit on a synthetic spectrum, with the expected exponent attached."""
    kind = Decay(kind)
    mu = synthetic_spectrum(kind, n, param, scale)
    out = fit_spectrum_rate(mu, gammas, log_correction=kind is Decay.EXP, search=search)
    out.expected = expected_exponent(kind, param)
    return out


def default_gammas() -> np.ndarray:
    return 2.0 ** -np.arange(6, 21, dtype=float)
