"""Eigendecomposition of the kernel matrix and rank-r truncations."""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass

import numpy as np

from .errors import NumericError

#: eigenvalues in [-CLIP_RTOL * mu_1, 0) are roundoff and get clipped to zero
CLIP_RTOL = 1e-10
SYMMETRY_RTOL = 1e-12


@dataclass(frozen=True)
class EigenSystem:
    """Descending eigenvalues ``mu`` and matching orthonormal columns ``basis``."""

    mu: np.ndarray
    basis: np.ndarray

    def __post_init__(self):
        for a in (self.mu, self.basis):
            a.setflags(write=False)

    @property
    def n(self) -> int:
        return self.mu.size

    def truncate(self, r: int) -> "Truncation":
        return truncate_rank(self, r)

    def reconstruct(self) -> np.ndarray:
        return (self.basis * self.mu) @ self.basis.T


@dataclass(frozen=True)
class Truncation:
    """Top-``r`` part of an :class:`EigenSystem`; ``mu``/``basis`` are views."""

    r: int
    mu: np.ndarray
    basis: np.ndarray
    mu_next: float

    def matrix(self) -> np.ndarray:
        return (self.basis * self.mu) @ self.basis.T


def eigendecompose(K) -> EigenSystem:
    K = np.asarray(K, dtype=float)
    if K.ndim != 2 or K.shape[0] != K.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {K.shape}")
    scale = np.max(np.abs(K)) if K.size else 0.0
    if np.max(np.abs(K - K.T), initial=0.0) > SYMMETRY_RTOL * scale:
        raise ValueError("kernel matrix is not symmetric")
    try:
        mu, U = np.linalg.eigh(K)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigendecomposition did not converge: {exc}") from exc
    mu, U = mu[::-1].copy(), U[:, ::-1].copy()
    floor = -CLIP_RTOL * max(mu[0], 0.0)
    if mu[-1] < floor:
        raise NumericError(f"matrix is indefinite: smallest eigenvalue {mu[-1]:.3e}")
    np.clip(mu, 0.0, None, out=mu)
    return EigenSystem(mu, U)


def truncate_rank(E: EigenSystem, r: int) -> Truncation:
    """Keep the top ``r`` eigenpairs; ``mu_next`` is ``mu_{r+1}`` (zero when ``r == n``)."""
    if int(r) != r or not 1 <= r <= E.n:
        raise ValueError(f"truncation level must be in [1, {E.n}], got {r}")
    r = int(r)
    mu_next = float(E.mu[r]) if r < E.n else 0.0
    return Truncation(r, E.mu[:r], E.basis[:, :r], mu_next)


class Decay(str, enum.Enum):
    POLY = "poly"
    EXP = "exp"


def synthetic_spectrum(kind: Decay | str, n: int, param: float, scale: float = 1.0) -> np.ndarray:
    """Model eigenvalue sequences for rate studies.

    ``poly``: ``scale * i**(-2 * param)`` (Sobolev-type decay with smoothness ``param``).
    ``exp``: ``scale * exp(-param * i * log(i + 1))`` (Gaussian-type decay); the
    shift ``i + 1`` keeps the first ratio away from 1.
    """
    kind = Decay(kind)
    if not param > 0 or not scale > 0:
        raise ValueError("decay parameter and scale must be positive")
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    i = np.arange(1, int(n) + 1, dtype=float)
    if kind is Decay.POLY:
        return scale * i ** (-2.0 * param)
    return scale * np.exp(-param * i * np.log(i + 1.0))


def as_spectrum(spectrum) -> np.ndarray:
    """Coerce an eigenvalue container (array, sequence, or anything with ``.mu``) to a checked vector."""
    mu = np.asarray(getattr(spectrum, "mu", spectrum), dtype=float).ravel()
    if mu.size == 0:
        raise ValueError("empty spectrum")
    if np.any(mu < 0):
        raise ValueError("eigenvalues must be nonnegative")
    if np.any(np.diff(mu) > 0):
        raise ValueError("eigenvalues must be sorted in descending order")
    return mu


def write_spectrum_csv(path, spectrum) -> None:
    mu = as_spectrum(spectrum)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["index", "eigenvalue"])
        for i, m in enumerate(mu, start=1):
            w.writerow([i, repr(float(m))])


def read_spectrum_csv(path) -> np.ndarray:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return np.array([float(r["eigenvalue"]) for r in rows])
