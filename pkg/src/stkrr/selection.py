"""Regularization curves, lambda search and the optimal truncation level.

The optimal truncation is found in three steps: minimize the full-KRR maximum
risk over ``lam`` to get ``lambda_n``; set ``r_n = r(lambda_n)`` where
``r(lam) = min{r : mu_{r+1} <= H_n(lam)}``; then minimize again at ``r = r_n``.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateSpectrumError, PreconditionError
from .risk import NoiseModel, RiskPoint, h, max_mse
from .spectral import as_spectrum

SCHEMA_VERSION = 1
CURVE_FIELDS = ["lambda", "r", "wae", "ee", "max_mse"]
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class SearchConfig:
    num_points: int = 400
    lo_factor: float = 1e-6  # grid starts at lo_factor * mu_1
    hi_factor: float = 10.0  # and ends at hi_factor * mu_1
    rtol: float = 1e-6  # relative width of the final lambda bracket

    def grid(self, mu1: float) -> np.ndarray:
        if self.num_points < 3 or not 0 < self.lo_factor < self.hi_factor:
            raise ValueError(f"bad search config {self}")
        return np.geomspace(self.lo_factor * mu1, self.hi_factor * mu1, self.num_points)


@dataclass
class RiskCurve:
    r: int
    points: list[RiskPoint]
    argmin_lambda: float
    min_risk: float
    at_boundary: bool

    @property
    def lambdas(self) -> np.ndarray:
        return np.array([p.lam for p in self.points])

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(p, name) for p in self.points])


@dataclass(frozen=True)
class LambdaOptimum:
    lam: float
    risk: float
    bracket: tuple[float, float]  # interval the golden-section polish ran on
    at_boundary: bool  # best coarse grid point was an end of the grid


@dataclass
class TruncationReport:
    lambda_n: float
    r_n: int
    min_risk_full: float
    min_risk_truncated: float
    lambda_truncated: float
    n: int
    sigma2: float
    bracket_full: tuple[float, float]
    r_table: list[tuple[float, int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "lambda_n": self.lambda_n,
            "r_n": self.r_n,
            "min_risk_full": self.min_risk_full,
            "min_risk_truncated": self.min_risk_truncated,
            "lambda_truncated": self.lambda_truncated,
            "n": self.n,
            "sigma2": self.sigma2,
            "bracket_full": list(self.bracket_full),
        }


@dataclass(frozen=True)
class DominationReport:
    holds: bool
    lhs: float  # max MSE of the r-truncated estimator
    rhs: float  # max MSE of full KRR
    strict: bool  # lhs < rhs
    strict_expected: bool  # mu_{r+1} > 0
    gap: float  # rhs - lhs as the dropped estimation-error tail, free of cancellation


def max_mse_many(mu: np.ndarray, r: int, lams: np.ndarray, gamma: float) -> np.ndarray:
    """Vectorized maximum MSE over an array of ``lam`` (no input checks)."""
    m = mu[:r, None]
    lams = np.asarray(lams, dtype=float)[None, :]
    mu_next = mu[r] if r < mu.size else 0.0
    wae = np.maximum(np.max(lams**2 * m / (m + lams) ** 2, axis=0), mu_next)
    ee = gamma * np.cumsum((m / (m + lams)) ** 2, axis=0)[-1]
    return wae + ee


def risk_curve(spectrum, r: int, lambda_grid, noise: NoiseModel) -> RiskCurve:
    mu = as_spectrum(spectrum)
    grid = np.asarray(lambda_grid, dtype=float).ravel()
    if grid.size == 0:
        raise ValueError("empty lambda grid")
    if np.any(grid <= 0) or np.any(np.diff(grid) <= 0):
        raise ValueError("lambda grid must be positive and strictly increasing")
    points = [max_mse(mu, r, float(lam), noise) for lam in grid]
    risks = np.array([p.max_mse for p in points])
    i = int(np.argmin(risks))  # first minimum, i.e. smallest lambda on ties
    boundary = grid.size > 1 and i in (0, grid.size - 1)
    return RiskCurve(int(r), points, float(grid[i]), float(risks[i]), bool(boundary))


def _golden(f, a: float, b: float, tol: float):
    """Golden-section search for a minimum of ``f`` on ``[a, b]`` down to width ``tol``."""
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def minimize_lambda(spectrum, r: int, noise: NoiseModel, search: SearchConfig | None = None) -> LambdaOptimum:
    """Coarse log-grid scan, then golden-section polish in ``log(lam)`` on the bracketing cells."""
    search = search or SearchConfig()
    mu = as_spectrum(spectrum)
    if mu[0] <= 0:
        raise DegenerateSpectrumError("cannot tune lambda for an all-zero spectrum")
    if int(r) != r or not 1 <= r <= mu.size:
        raise ValueError(f"truncation level must be in [1, {mu.size}], got {r}")
    r = int(r)
    grid = search.grid(mu[0])
    risks = max_mse_many(mu, r, grid, noise.gamma)
    i = int(np.argmin(risks))
    best_lam, best_risk = float(grid[i]), float(risks[i])
    at_boundary = i in (0, grid.size - 1)
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, grid.size - 1)]

    def objective(t):
        return float(max_mse_many(mu, r, [math.exp(t)], noise.gamma)[0])

    t, ft = _golden(objective, math.log(lo), math.log(hi), math.log1p(search.rtol))
    if ft < best_risk:
        best_lam, best_risk = math.exp(t), ft
    return LambdaOptimum(best_lam, best_risk, (float(lo), float(hi)), bool(at_boundary))


def r_of_lambda(spectrum, lam: float) -> int:
    """``min{r in 1..n : mu_{r+1} <= H_n(lam)}`` with ``mu_{n+1} = 0``."""
    mu = as_spectrum(spectrum)
    if not lam > 0:
        raise ValueError(f"regularization must be positive, got {lam}")
    H = float(np.max(h(lam, mu)))
    mu_next = np.append(mu[1:], 0.0)
    return int(np.argmax(mu_next <= H)) + 1


def optimal_truncation(spectrum, noise: NoiseModel, search: SearchConfig | None = None) -> TruncationReport:
    search = search or SearchConfig()
    mu = as_spectrum(spectrum)
    n = mu.size
    full = minimize_lambda(mu, n, noise, search)
    r_n = r_of_lambda(mu, full.lam)
    trunc = minimize_lambda(mu, r_n, noise, search)
    lam_t, risk_t = trunc.lam, trunc.risk
    # the truncated estimator at lambda_n already beats full KRR; keep it if the search missed it
    at_lambda_n = max_mse(mu, r_n, full.lam, noise).max_mse
    if at_lambda_n < risk_t:
        lam_t, risk_t = full.lam, at_lambda_n
    table = [(float(lam), r_of_lambda(mu, lam)) for lam in search.grid(mu[0])]
    return TruncationReport(
        lambda_n=full.lam,
        r_n=r_n,
        min_risk_full=full.risk,
        min_risk_truncated=risk_t,
        lambda_truncated=lam_t,
        n=noise.n,
        sigma2=noise.sigma2,
        bracket_full=full.bracket,
        r_table=table,
    )


def domination_check(spectrum, noise: NoiseModel, lam: float, r: int) -> DominationReport:
    mu = as_spectrum(spectrum)
    r_min = r_of_lambda(mu, lam)
    if r < r_min:
        raise PreconditionError(f"domination is only claimed for r >= r(lam) = {r_min}, got r = {r}")
    lhs = max_mse(mu, r, lam, noise).max_mse
    rhs = max_mse(mu, mu.size, lam, noise).max_mse
    mu_next = float(mu[r]) if r < mu.size else 0.0
    # for r >= r(lam) both approximation errors equal H_n(lam); only the EE tail differs
    tail = mu[r:]
    gap = noise.gamma * float(np.sum((tail / (tail + lam)) ** 2))
    return DominationReport(lhs <= rhs, lhs, rhs, lhs < rhs, mu_next > 0, gap)


def write_curve_csv(path, curves) -> None:
    """Write one or more :class:`RiskCurve` objects as rows of ``lambda,r,wae,ee,max_mse``."""
    if isinstance(curves, RiskCurve):
        curves = [curves]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CURVE_FIELDS)
        for c in curves:
            for p in c.points:
                w.writerow([repr(p.lam), p.r, repr(p.wae), repr(p.ee), repr(p.max_mse)])


def read_curve_csv(path) -> list[RiskPoint]:
    with open(path, newline="") as fh:
        return [
            RiskPoint(float(row["lambda"]), int(row["r"]), float(row["wae"]), float(row["ee"]), float(row["max_mse"]))
            for row in csv.DictReader(fh)
        ]


def write_report_json(path, report: TruncationReport) -> None:
    with open(path, "w") as fh:
        json.dump(report.to_dict(), fh, indent=2)
        fh.write("\n")
