"""Monte-Carlo replications: random unit-ball targets, noisy data, empirical MSE.

Seeding
-------
Replication ``k`` draws from ``SeedSequence(base_seed, spawn_key=(k,))``; its
first spawned child generates the target (fresh-target mode), the second the
noise. In fixed-target mode the single target comes from
``SeedSequence(base_seed)`` itself. ``SeedSequence`` keeps these streams
stable across numpy versions, so a config always reproduces the same report.
"""

from __future__ import annotations

import csv
import enum
import json
import logging
from dataclasses import asdict, dataclass, field

import numpy as np

from .estimator import TargetFunction, approximant, fit_path, sample_ball_target
from .kernels import KernelSpec
from .risk import NoiseModel, estimation_error
from .selection import SCHEMA_VERSION, max_mse_many
from .spectral import EigenSystem

logger = logging.getLogger(__name__)

REPORT_FIELDS = ["lambda", "r", "mean_mse", "stderr", "reps", "theory_max_mse"]


class TargetMode(str, enum.Enum):
    FRESH = "fresh"
    FIXED = "fixed"


class NoiseDist(str, enum.Enum):
    GAUSSIAN = "gaussian"
    RADEMACHER = "rademacher"
    SPHERE = "sphere"


@dataclass
class SimulationConfig:
    kernel: KernelSpec
    n: int
    sigma: float
    lambda_grid: list[float]
    r_values: list[int]
    replications: int = 1000
    base_seed: int = 0
    target_mode: TargetMode = TargetMode.FIXED
    noise_dist: NoiseDist = NoiseDist.GAUSSIAN

    def __post_init__(self):
        self.target_mode = TargetMode(self.target_mode)
        self.noise_dist = NoiseDist(self.noise_dist)
        self.lambda_grid = [float(v) for v in self.lambda_grid]
        self.r_values = [int(v) for v in self.r_values]
        if self.replications < 1:
            raise ValueError("need at least one replication")
        if self.sigma < 0:
            raise ValueError("noise level must be nonnegative")
        if not self.lambda_grid or min(self.lambda_grid) <= 0:
            raise ValueError("lambda grid must be non-empty and positive")
        if not self.r_values or min(self.r_values) < 1 or max(self.r_values) > self.n:
            raise ValueError(f"truncation levels must lie in [1, {self.n}]")

    @property
    def noise(self) -> NoiseModel:
        return NoiseModel.from_sigma(self.sigma, self.n)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["kernel"] = {"kind": self.kernel.kind, "domain": list(self.kernel.domain), "bandwidth": self.kernel.bandwidth}
        d["target_mode"] = self.target_mode.value
        d["noise_dist"] = self.noise_dist.value
        return d


@dataclass
class SimulationReport:
    lambdas: np.ndarray  # per row
    rs: np.ndarray  # per row
    mean_mse: np.ndarray
    stderr: np.ndarray
    reps: np.ndarray  # successful replications per row
    theory_max_mse: np.ndarray
    replication_seeds: list[int] = field(default_factory=list)
    config: SimulationConfig | None = None

    def rows(self):
        for row in zip(self.lambdas, self.rs, self.mean_mse, self.stderr, self.reps, self.theory_max_mse):
            yield row

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(REPORT_FIELDS)
            for lam, r, m, se, k, th in self.rows():
                w.writerow([repr(float(lam)), int(r), repr(float(m)), repr(float(se)), int(k), repr(float(th))])

    def write_sidecar(self, path) -> None:
        meta = {
            "schema_version": SCHEMA_VERSION,
            "config": self.config.to_dict() if self.config else None,
            "base_seed": self.config.base_seed if self.config else None,
            "replication_seeds": self.replication_seeds,
        }
        with open(path, "w") as fh:
            json.dump(meta, fh, indent=2)
            fh.write("\n")


def read_report_csv(path) -> list[dict]:
    with open(path, newline="") as fh:
        out = []
        for row in csv.DictReader(fh):
            out.append(
                {
                    "lambda": float(row["lambda"]),
                    "r": int(row["r"]),
                    "mean_mse": float(row["mean_mse"]),
                    "stderr": float(row["stderr"]),
                    "reps": int(row["reps"]),
                    "theory_max_mse": float(row["theory_max_mse"]),
                }
            )
        return out


def empirical_mse(fitted_u, u_star) -> float:
    """``||u - u*||^2``, which equals the squared empirical norm ``||f - f*||_n^2``."""
    fitted_u = np.asarray(fitted_u, dtype=float)
    u_star = np.asarray(u_star, dtype=float)
    if fitted_u.shape != u_star.shape:
        raise ValueError(f"length mismatch: {fitted_u.shape} vs {u_star.shape}")
    d = fitted_u - u_star
    return float(d @ d)


def draw_noise(rng: np.random.Generator, dist: NoiseDist | str, sigma: float, n: int) -> np.ndarray:
    """Zero-mean noise with covariance ``sigma^2 I``."""
    dist = NoiseDist(dist)
    if dist is NoiseDist.GAUSSIAN:
        return sigma * rng.standard_normal(n)
    if dist is NoiseDist.RADEMACHER:
        return sigma * rng.choice([-1.0, 1.0], size=n)
    g = rng.standard_normal(n)
    return sigma * np.sqrt(n) * g / np.linalg.norm(g)


def replication_seed(base_seed: int, k: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(base_seed, spawn_key=(k,))


def run_replications(config: SimulationConfig, E: EigenSystem, K) -> SimulationReport:
    K = np.asarray(K, dtype=float)
    n = config.n
    if E.n != n or K.shape != (n, n):
        raise ValueError("eigensystem, kernel matrix and config disagree on n")
    lams = np.asarray(config.lambda_grid)
    r_values = config.r_values
    for r in r_values:
        if E.mu[r - 1] <= 0:
            raise ValueError(f"r={r} keeps a zero eigenvalue")

    n_rows = len(r_values) * lams.size
    mse = np.full((config.replications, n_rows), np.nan)
    seeds = []
    fixed = None
    if config.target_mode is TargetMode.FIXED:
        fixed = sample_ball_target(E, K, np.random.SeedSequence(config.base_seed))

    for k in range(config.replications):
        ss = replication_seed(config.base_seed, k)
        seeds.append(int(ss.generate_state(1, np.uint64)[0]))
        target_ss, noise_ss = ss.spawn(2)
        try:
            target = fixed if fixed is not None else sample_ball_target(E, K, target_ss)
            w = draw_noise(np.random.default_rng(noise_ss), config.noise_dist, config.sigma, n)
            y = np.sqrt(n) * target.u_star + w
            for j, r in enumerate(r_values):
                diff = fit_path(E, r, lams, y) - target.u_star[:, None]
                mse[k, j * lams.size : (j + 1) * lams.size] = np.einsum("ij,ij->j", diff, diff)
        except (ValueError, ArithmeticError, np.linalg.LinAlgError):
            logger.exception("replication %d (base_seed=%d) aborted", k, config.base_seed)
            mse[k] = np.nan

    ok = ~np.isnan(mse)
    reps = ok.sum(axis=0)
    mean = np.nanmean(mse, axis=0)
    if config.replications > 1:
        stderr = np.nanstd(mse, axis=0, ddof=1) / np.sqrt(reps)
    else:
        stderr = np.full(n_rows, np.nan)
    theory = np.concatenate([max_mse_many(E.mu, r, lams, config.noise.gamma) for r in r_values])
    return SimulationReport(
        lambdas=np.tile(lams, len(r_values)),
        rs=np.repeat(r_values, lams.size),
        mean_mse=mean,
        stderr=stderr,
        reps=reps,
        theory_max_mse=theory,
        replication_seeds=seeds,
        config=config,
    )


def risk_of_target(E: EigenSystem, lam: float, r: int, noise: NoiseModel, target: TargetFunction) -> float:
    """Exact MSE for one target: approximation error plus estimation error."""
    ae = empirical_mse(approximant(E, r, lam, target).fitted_u, target.u_star)
    return ae + estimation_error(E, r, lam, noise)


def max_over_ball_probe(E: EigenSystem, K, lam: float, r: int, noise: NoiseModel, num_targets: int, seed=None) -> float:
    """Largest exact MSE among ``num_targets`` random unit-norm targets.

    A sampled lower estimate of the supremum; never exceeds the closed form.
    """
    if num_targets < 1:
        raise ValueError("need at least one target")
    ss = np.random.SeedSequence(seed)
    return max(
        risk_of_target(E, lam, r, noise, sample_ball_target(E, K, child)) for child in ss.spawn(int(num_targets))
    )
