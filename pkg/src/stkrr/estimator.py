"""The r-truncated, lambda-regularized KRR estimator, computed in spectral coordinates.

Observations are rescaled to ``y / sqrt(n)`` and rotated into the eigenbasis,
where the estimator is a diagonal shrinkage: coordinate ``i <= r`` is multiplied
by ``mu_i / (mu_i + lam)`` and the rest are dropped. Coefficients are taken in
``ran(U_r)``, which makes the truncated and exact kernel matrices agree on them,
so the fitted function is evaluated with the exact kernel.

Function values enter through the "u-space" representation ``u = K @ omega``:
``f_omega(x_i) = sqrt(n) * u_i`` and the empirical norm of ``f_omega - f_omega*``
equals the Euclidean norm of ``u - u*``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import RankError
from .kernels import DesignPoints, KernelSpec
from .spectral import EigenSystem, truncate_rank


@dataclass(frozen=True)
class TruncatedEstimate:
    r: int
    lam: float
    mu: np.ndarray  # retained eigenvalues mu_1..mu_r
    alpha: np.ndarray  # spectral coefficients, omega = U_r @ alpha
    omega: np.ndarray
    fitted_u: np.ndarray  # K @ omega; fitted values are sqrt(n) * fitted_u

    @property
    def n(self) -> int:
        return self.omega.size

    @property
    def fitted_values(self) -> np.ndarray:
        return np.sqrt(self.n) * self.fitted_u


@dataclass(frozen=True)
class TargetFunction:
    """A regression function ``f_omega*`` in the span of the kernel sections."""

    omega_star: np.ndarray
    u_star: np.ndarray
    hilbert_norm_sq: float

    def v_star(self, E: EigenSystem) -> np.ndarray:
        return E.basis.T @ self.u_star

    @classmethod
    def from_omega(cls, K, omega) -> "TargetFunction":
        omega = np.asarray(omega, dtype=float)
        u = np.asarray(K) @ omega
        return cls(omega, u, float(omega @ u))


def _check(E: EigenSystem, r: int, lam: float):
    if not lam > 0:
        raise ValueError(f"regularization must be positive, got {lam}")
    tr = truncate_rank(E, r)
    if tr.mu[-1] <= 0:
        raise RankError(f"mu_{r} = 0: truncation level exceeds the numerical rank")
    return tr


def fit(E: EigenSystem, r: int, lam: float, y) -> TruncatedEstimate:
    y = np.asarray(y, dtype=float)
    if y.shape != (E.n,):
        raise ValueError(f"expected {E.n} observations, got shape {y.shape}")
    tr = _check(E, r, lam)
    z = tr.basis.T @ (y / np.sqrt(E.n))
    alpha = z / (tr.mu + lam)
    omega = tr.basis @ alpha
    fitted_u = tr.basis @ (tr.mu * alpha)
    return TruncatedEstimate(tr.r, float(lam), tr.mu, alpha, omega, fitted_u)


def fit_path(E: EigenSystem, r: int, lams, y) -> np.ndarray:
    """Fitted u-space values for many ``lam`` at once, one column per ``lam``.

    Same numbers as ``fit(E, r, lam, y).fitted_u`` for each entry of ``lams``,
    with a single matrix product instead of a Python loop.
    """
    lams = np.atleast_1d(np.asarray(lams, dtype=float))
    if np.any(lams <= 0):
        raise ValueError("regularization must be positive")
    tr = _check(E, r, lams.min())
    y = np.asarray(y, dtype=float)
    z = tr.basis.T @ (y / np.sqrt(E.n))
    shrink = tr.mu[:, None] / (tr.mu[:, None] + lams[None, :])
    return tr.basis @ (shrink * z[:, None])


def predict_at(est: TruncatedEstimate, spec: KernelSpec, design: DesignPoints, x):
    """Evaluate ``(1 / sqrt(n)) * sum_j omega_j k(x, x_j)``; ``x`` may be a scalar or array."""
    xs = spec.check_inside(x)
    vals = spec(np.atleast_1d(xs)[:, None], design.x[None, :]) @ est.omega / np.sqrt(design.n)
    return float(vals[0]) if xs.ndim == 0 else vals


def hilbert_norm_sq(est: TruncatedEstimate) -> float:
    """RKHS norm squared, ``omega^T K omega = sum_{i<=r} mu_i alpha_i^2``."""
    return float(np.sum(est.mu * est.alpha**2))


def approximant(E: EigenSystem, r: int, lam: float, target: TargetFunction) -> TruncatedEstimate:
    """The estimate obtained from noiseless observations of ``target``."""
    return fit(E, r, lam, np.sqrt(E.n) * target.u_star)


def sample_ball_target(E: EigenSystem, K, rng_seed=None) -> TargetFunction:
    """Random target on the RKHS unit sphere: ``omega* ~ N(0, I)`` rescaled to unit Hilbert norm.

    ``rng_seed`` is anything :func:`numpy.random.default_rng` accepts.
    """
    K = np.asarray(K, dtype=float)
    if K.shape != (E.n, E.n):
        raise ValueError("kernel matrix and eigensystem sizes differ")
    rng = np.random.default_rng(rng_seed)
    while True:
        omega = rng.standard_normal(E.n)
        q = float(omega @ K @ omega)
        if q > 0:
            break
    omega = omega / np.sqrt(q)
    return TargetFunction.from_omega(K, omega)
