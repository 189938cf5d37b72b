"""Closed-form worst-case risk of truncated KRR over the RKHS unit ball.

Everything here depends on the kernel matrix only through its eigenvalues, so
each function takes a spectrum: a descending nonnegative vector, or any object
with a ``mu`` attribute (e.g. an :class:`~stkrr.spectral.EigenSystem`).

For truncation level ``r`` and regularization ``lam`` the maximum MSE splits
into a worst-case approximation error (WAE) and an estimation error (EE)::

    WAE = max(max_{i<=r} h(lam, mu_i), mu_{r+1}),   h(lam, x) = lam^2 x / (x + lam)^2
    EE  = (sigma^2 / n) * sum_{i<=r} (mu_i / (mu_i + lam))^2

with ``mu_{n+1} = 0``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSpectrumError, PreconditionError
from .spectral import as_spectrum


@dataclass(frozen=True)
class NoiseModel:
    sigma2: float
    n: int

    def __post_init__(self):
        if not self.sigma2 >= 0:
            raise ValueError(f"noise variance must be >= 0, got {self.sigma2}")
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"sample size must be a positive integer, got {self.n}")

    @classmethod
    def from_sigma(cls, sigma: float, n: int) -> "NoiseModel":
        return cls(float(sigma) ** 2, int(n))

    @property
    def gamma(self) -> float:
        return self.sigma2 / self.n


@dataclass(frozen=True)
class RiskPoint:
    lam: float
    r: int
    wae: float
    ee: float
    max_mse: float


class StatisticalDimensionWarning(UserWarning):
    pass


def _check_r(mu, r):
    if int(r) != r or not 1 <= r <= mu.size:
        raise ValueError(f"truncation level must be in [1, {mu.size}], got {r}")
    return int(r)


def _check_lam(lam):
    if not lam > 0:
        raise ValueError(f"regularization must be positive, got {lam}")


def _mu_next(mu, r):
    return float(mu[r]) if r < mu.size else 0.0


def h(lam: float, x):
    """``lam^2 x / (x + lam)^2``; peaks at ``x = lam`` with value ``lam / 4``."""
    x = np.asarray(x, dtype=float)
    out = lam**2 * x / (x + lam) ** 2
    return float(out) if out.ndim == 0 else out


def wae(spectrum, r: int, lam: float) -> float:
    mu = as_spectrum(spectrum)
    r = _check_r(mu, r)
    _check_lam(lam)
    return max(float(np.max(h(lam, mu[:r]))), _mu_next(mu, r))


def estimation_error(spectrum, r: int, lam: float, noise: NoiseModel) -> float:
    mu = as_spectrum(spectrum)
    r = _check_r(mu, r)
    _check_lam(lam)
    m = mu[:r]
    # sequential summation keeps the result nondecreasing in r under rounding
    return noise.gamma * float(np.cumsum((m / (m + lam)) ** 2)[-1])


def max_mse(spectrum, r: int, lam: float, noise: NoiseModel, radius: float = 1.0) -> RiskPoint:
    """Exact supremum of the MSE over the RKHS ball of the given radius.

    A radius ``R`` is handled by rescaling: the unit-ball formula with noise
    variance ``sigma^2 / R^2``, multiplied through by ``R^2``.
    """
    if not radius > 0:
        raise ValueError("ball radius must be positive")
    scaled = NoiseModel(noise.sigma2 / radius**2, noise.n)
    R2 = radius**2
    a = R2 * wae(spectrum, r, lam)
    e = R2 * estimation_error(spectrum, r, lam, scaled)
    return RiskPoint(float(lam), int(r), a, e, a + e)


def wae_upper(lam: float, mu_next: float) -> float:
    return max(lam / 4.0, float(mu_next))


def regularized_risk_sup(spectrum, r: int, lam: float, closed_form: bool = False) -> float:
    """Supremum over the unit ball of ``||f* - f_bar||_n^2 + lam ||f_bar||_H^2``.

    ``f_bar`` is the noiseless approximant. The inner maximum over
    ``lam mu_i / (mu_i + lam)`` is increasing in ``mu_i``, so with
    ``closed_form=True`` only ``mu_1`` is used.
    """
    mu = as_spectrum(spectrum)
    r = _check_r(mu, r)
    _check_lam(lam)
    if closed_form:
        inner = lam * mu[0] / (mu[0] + lam)
    else:
        inner = np.max(lam * mu / (mu + lam))
    return max(float(inner), _mu_next(mu, r))


def kernel_complexity(spectrum, r: int, delta: float, noise: NoiseModel) -> float:
    """``sqrt((sigma^2 / n) * sum_{i<=r} min(mu_i, delta^2))``; ``r = 0`` gives 0."""
    mu = as_spectrum(spectrum)
    if int(r) != r or not 0 <= r <= mu.size:
        raise ValueError(f"truncation level must be in [0, {mu.size}], got {r}")
    if not delta > 0:
        raise ValueError("delta must be positive")
    return float(np.sqrt(noise.gamma * np.sum(np.minimum(mu[: int(r)], delta**2))))


def weak_bound(spectrum, r: int, lam: float, delta: float, noise: NoiseModel) -> float:
    """Looser bound ``lam / 4 + (R_r(delta) / delta)^2``, valid for ``lam >= max(delta^2, 4 mu_{r+1})``.

    When ``lam >= mu_1`` the first term is tightened to
    ``max(mu_1 lam^2 / (lam + mu_1)^2, mu_{r+1})``. The ``mu_{r+1}`` floor is
    needed: with ``mu_{r+1}`` close to ``mu_1`` the bare ``h(lam, mu_1)`` can
    fall below the true approximation error.
    """
    mu = as_spectrum(spectrum)
    r = _check_r(mu, r)
    _check_lam(lam)
    mu_next = _mu_next(mu, r)
    if lam < max(delta**2, 4.0 * mu_next) * (1.0 - 1e-12):
        raise PreconditionError(
            f"bound needs lam >= max(delta^2, 4 mu_(r+1)) = {max(delta**2, 4 * mu_next):.6g}, got {lam:.6g}"
        )
    first = lam / 4.0
    if lam >= mu[0]:
        first = max(h(lam, mu[0]), mu_next)
    return first + (kernel_complexity(mu, r, delta, noise) / delta) ** 2


def critical_radius(spectrum, noise: NoiseModel, max_iter: int = 200) -> float:
    """Solve ``delta^2 = 2 R_n(delta)`` by bisection.

    ``delta^2 / R_n(delta)`` is increasing, so the crossing is unique.
    """
    mu = as_spectrum(spectrum)
    if mu[0] <= 0:
        raise DegenerateSpectrumError("critical radius of an all-zero spectrum")
    if not noise.sigma2 > 0:
        raise ValueError("critical radius needs sigma2 > 0")

    def excess(d):
        return d * d - 2.0 * np.sqrt(noise.gamma * np.sum(np.minimum(mu, d * d)))

    lo = 1e-12
    hi = np.sqrt(mu[0]) + 2.0 * np.sqrt(noise.gamma * mu.size * mu[0])
    while excess(hi) < 0:
        hi *= 2.0
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if excess(mid) < 0:
            lo = mid
        else:
            hi = mid
    return float(hi)


def statistical_dimension(spectrum, delta: float) -> int:
    """Smallest ``r`` with ``mu_r <= delta^2``.

    Returns ``n + 1`` with a :class:`StatisticalDimensionWarning` if every
    eigenvalue exceeds ``delta^2``.
    """
    mu = as_spectrum(spectrum)
    if not delta > 0:
        raise ValueError("delta must be positive")
    hits = np.flatnonzero(mu <= delta**2)
    if hits.size == 0:
        warnings.warn(
            f"all {mu.size} eigenvalues exceed delta^2={delta**2:.3g}; returning n + 1",
            StatisticalDimensionWarning,
            stacklevel=2,
        )
        return mu.size + 1
    return int(hits[0]) + 1
