"""Command-line front end.

    stkrr spectrum  --kernel sobolev1 --n 200
    stkrr curve     --kernel sobolev1 --n 200 --sigma 2 --r 3 --r 200
    stkrr optimal   --kernel gaussian --bandwidth 0.1 --n 200 --sigma 2
    stkrr simulate  --kernel sobolev1 --reps 1000 --seed 0
    stkrr rates     --decay poly --alpha 1

Artifacts go to ``--out`` (default: ``$STKRR_OUTPUT_DIR`` or the current
directory). The exit status is 0 exactly when every artifact was written;
on failure anything already written by the run is removed.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import rates as rates_mod
from .kernels import KernelSpec, Scheme, kernel_matrix, make_design
from .risk import NoiseModel
from .selection import (
    SCHEMA_VERSION,
    SearchConfig,
    optimal_truncation,
    risk_curve,
    write_curve_csv,
    write_report_json,
)
from .simulate import NoiseDist, SimulationConfig, TargetMode, run_replications
from .spectral import eigendecompose, write_spectrum_csv

logger = logging.getLogger("stkrr")

OUTPUT_ENV = "STKRR_OUTPUT_DIR"
COMMANDS = ("spectrum", "curve", "optimal", "simulate", "rates")
DEFAULT_DOMAINS = {"sobolev1": (0.0, 1.0), "gaussian": (-1.0, 1.0)}


@dataclass
class RunConfig:
    command: str
    kernel: str = "sobolev1"
    bandwidth: float = 0.1
    domain: tuple[float, float] | None = None
    design: str | None = None
    n: int = 200
    sigma: float = 2.0
    r: list[int] = field(default_factory=list)
    lambdas: list[float] = field(default_factory=list)
    grid_points: int = 400
    lambda_min_factor: float = 1e-6
    lambda_max_factor: float = 10.0
    reps: int = 1000
    seed: int = 0
    target_mode: str = "fixed"
    noise: str = "gaussian"
    decay: str = "poly"
    alpha: float = 1.0
    c: float = 1.0
    gamma_exps: tuple[int, int] = (6, 20)
    out: Path = Path(".")
    format: str = "csv"
    verbose: bool = False

    def kernel_spec(self) -> KernelSpec:
        domain = self.domain or DEFAULT_DOMAINS[self.kernel]
        if self.kernel == "gaussian":
            return KernelSpec.gaussian(self.bandwidth, domain)
        return KernelSpec.sobolev1(domain)

    def search(self) -> SearchConfig:
        return SearchConfig(self.grid_points, self.lambda_min_factor, self.lambda_max_factor)


def _common(n: int = 200) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--kernel", choices=["sobolev1", "gaussian"], default="sobolev1")
    common.add_argument("--bandwidth", type=float, default=0.1, help="gaussian bandwidth (default 0.1)")
    common.add_argument("--domain", type=float, nargs=2, metavar=("A", "B"))
    common.add_argument("--design", choices=[s.value for s in Scheme], help="default: open-left for sobolev1, closed otherwise")
    common.add_argument("--n", type=int, default=n)
    common.add_argument("--sigma", type=float, default=2.0)
    common.add_argument("--out", type=Path, default=None, help=f"output directory (default ${OUTPUT_ENV} or .)")
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    return common


def _grid(points: int = 400, lo: float = 1e-6, hi: float = 10.0) -> argparse.ArgumentParser:
    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--grid-points", type=int, default=points)
    grid.add_argument("--lambda-min-factor", type=float, default=lo, help="grid start as a multiple of mu_1")
    grid.add_argument("--lambda-max-factor", type=float, default=hi, help="grid end as a multiple of mu_1")
    return grid


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stkrr", description="Spectrally-truncated kernel ridge regression risk tools")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[_common()], help="eigenvalues of the kernel matrix")

    c = sub.add_parser("curve", parents=[_common(), _grid()], help="maximum-MSE regularization curves")
    c.add_argument("--r", type=int, action="append", default=[], help="truncation level (repeatable; default n)")
    c.add_argument("--lambda", dest="lambdas", type=float, action="append", default=[], help="explicit lambda (repeatable)")

    sub.add_parser("optimal", parents=[_common(), _grid()], help="lambda_n, r_n and the tuned risks")

    # coarser default grid for simulations: every grid point costs one fit per replication
    s = sub.add_parser("simulate", parents=[_common(), _grid(40, 1e-4, 1.0)], help="Monte-Carlo empirical MSE curves")
    s.add_argument("--r", type=int, action="append", default=[], help="truncation level (repeatable; default r_n and n)")
    s.add_argument("--lambda", dest="lambdas", type=float, action="append", default=[])
    s.add_argument("--reps", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--target-mode", choices=[m.value for m in TargetMode], default="fixed")
    s.add_argument("--noise", choices=[d.value for d in NoiseDist], default="gaussian")

    rt = sub.add_parser("rates", parents=[_common(n=4096)], help="slope fits of the tuned risk on synthetic spectra")
    rt.add_argument("--decay", choices=["poly", "exp"], default="poly")
    rt.add_argument("--alpha", type=float, default=1.0)
    rt.add_argument("--c", type=float, default=1.0)
    rt.add_argument("--gamma-exps", type=int, nargs=2, default=(6, 20), metavar=("KMIN", "KMAX"),
                    help="noise levels gamma = 2^-k for k in [KMIN, KMAX]")
    return p


def parse_args(argv=None) -> RunConfig:
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.n < 2:
        parser.error("argument --n: must be >= 2")
    if ns.sigma < 0:
        parser.error("argument --sigma: must be >= 0")
    if ns.bandwidth <= 0:
        parser.error("argument --bandwidth: must be positive")
    for r in getattr(ns, "r", []):
        if not 1 <= r <= ns.n:
            parser.error(f"argument --r: {r} not in [1, {ns.n}]")
    if any(v <= 0 for v in getattr(ns, "lambdas", [])):
        parser.error("argument --lambda: must be positive")
    if getattr(ns, "reps", 1) < 1:
        parser.error("argument --reps: must be >= 1")
    if getattr(ns, "grid_points", 3) < 3:
        parser.error("argument --grid-points: must be >= 3")
    out = ns.out if ns.out is not None else Path(os.environ.get(OUTPUT_ENV, "."))
    values = {k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__}
    values["out"] = out
    if ns.domain is not None:
        values["domain"] = tuple(ns.domain)
    if "gamma_exps" in values:
        values["gamma_exps"] = tuple(values["gamma_exps"])
    cfg = RunConfig(**values)
    try:
        cfg.kernel_spec()
    except ValueError as exc:
        parser.error(f"argument --domain: {exc}")
    return cfg


def _eigensystem(cfg: RunConfig):
    spec = cfg.kernel_spec()
    design = make_design(spec, cfg.n, cfg.design)
    K = kernel_matrix(spec, design)
    return spec, K, eigendecompose(K)


def _write_table(path: Path, fields, rows, fmt: str) -> None:
    if fmt == "json":
        with open(path, "w") as fh:
            json.dump({"schema_version": SCHEMA_VERSION, "rows": [dict(zip(fields, r)) for r in rows]}, fh, indent=2)
            fh.write("\n")
        return
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(fields)
        for r in rows:
            w.writerow([repr(v) if isinstance(v, float) else v for v in r])


def _run_spectrum(cfg: RunConfig, written: list[Path]) -> None:
    _, _, E = _eigensystem(cfg)
    path = cfg.out / f"spectrum.{cfg.format}"
    written.append(path)
    if cfg.format == "csv":
        write_spectrum_csv(path, E)
    else:
        _write_table(path, ["index", "eigenvalue"], [(i, float(m)) for i, m in enumerate(E.mu, 1)], "json")


def _run_curve(cfg: RunConfig, written: list[Path]) -> None:
    _, _, E = _eigensystem(cfg)
    noise = NoiseModel.from_sigma(cfg.sigma, cfg.n)
    grid = np.array(sorted(set(cfg.lambdas))) if cfg.lambdas else cfg.search().grid(E.mu[0])
    for r in cfg.r or [cfg.n]:
        curve = risk_curve(E, r, grid, noise)
        path = cfg.out / f"curve_r{r}.{cfg.format}"
        written.append(path)
        if cfg.format == "csv":
            write_curve_csv(path, curve)
        else:
            rows = [(p.lam, p.r, p.wae, p.ee, p.max_mse) for p in curve.points]
            _write_table(path, ["lambda", "r", "wae", "ee", "max_mse"], rows, "json")
        logger.info("r=%d: min max-MSE %.6g at lambda %.6g", r, curve.min_risk, curve.argmin_lambda)


def _run_optimal(cfg: RunConfig, written: list[Path]) -> None:
    _, _, E = _eigensystem(cfg)
    report = optimal_truncation(E, NoiseModel.from_sigma(cfg.sigma, cfg.n), cfg.search())
    if cfg.format == "json":
        path = cfg.out / "optimal.json"
        written.append(path)
        write_report_json(path, report)
    else:
        path = cfg.out / "optimal.csv"
        written.append(path)
        d = report.to_dict()
        d.pop("bracket_full")
        _write_table(path, list(d), [tuple(d.values())], "csv")
    logger.info("lambda_n=%.6g r_n=%d", report.lambda_n, report.r_n)


def _run_simulate(cfg: RunConfig, written: list[Path]) -> None:
    spec, K, E = _eigensystem(cfg)
    noise = NoiseModel.from_sigma(cfg.sigma, cfg.n)
    r_values = cfg.r
    if not r_values:
        r_n = optimal_truncation(E, noise, cfg.search()).r_n
        r_values = sorted({r_n, cfg.n})
    lambdas = sorted(set(cfg.lambdas)) if cfg.lambdas else cfg.search().grid(E.mu[0]).tolist()
    sim = SimulationConfig(
        kernel=spec,
        n=cfg.n,
        sigma=cfg.sigma,
        lambda_grid=lambdas,
        r_values=r_values,
        replications=cfg.reps,
        base_seed=cfg.seed,
        target_mode=cfg.target_mode,
        noise_dist=cfg.noise,
    )
    report = run_replications(sim, E, K)
    csv_path, json_path = cfg.out / "simulation.csv", cfg.out / "simulation.json"
    written.extend([csv_path, json_path])
    report.write_csv(csv_path)
    report.write_sidecar(json_path)


def _run_rates(cfg: RunConfig, written: list[Path]) -> None:
    kmin, kmax = sorted(cfg.gamma_exps)
    gammas = 2.0 ** -np.arange(kmin, kmax + 1, dtype=float)
    param = cfg.alpha if cfg.decay == "poly" else cfg.c
    fit = rates_mod.rate_fit(cfg.decay, param, cfg.n, gammas)
    path = cfg.out / f"rates.{cfg.format}"
    written.append(path)
    if cfg.format == "json":
        with open(path, "w") as fh:
            json.dump({"schema_version": SCHEMA_VERSION, "decay": cfg.decay, "param": param, "n": cfg.n, **fit.to_dict()}, fh, indent=2)
            fh.write("\n")
    else:
        rows = [(float(g), float(m), float(lam)) for g, m, lam in zip(fit.gammas, fit.risks, fit.lambdas)]
        _write_table(path, ["gamma", "min_max_mse", "lambda_star"], rows, "csv")
    logger.info("fitted exponent %.4f (lambda %.4f), expected %.4f", fit.slope, fit.lambda_slope, fit.expected)
    print(f"risk_exponent={fit.slope:.6f} lambda_exponent={fit.lambda_slope:.6f} expected={fit.expected:.6f} reliable={fit.reliable}")


_RUNNERS = {
    "spectrum": _run_spectrum,
    "curve": _run_curve,
    "optimal": _run_optimal,
    "simulate": _run_simulate,
    "rates": _run_rates,
}


def execute(cfg: RunConfig) -> int:
    written: list[Path] = []
    try:
        cfg.out.mkdir(parents=True, exist_ok=True)
        _RUNNERS[cfg.command](cfg, written)
    except (ValueError, ArithmeticError, np.linalg.LinAlgError, OSError) as exc:
        for path in written:
            path.unlink(missing_ok=True)
        print(f"stkrr {cfg.command}: error: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


def main(argv=None) -> int:
    cfg = parse_args(argv)
    logging.basicConfig(level=logging.INFO if cfg.verbose else logging.WARNING, format="%(name)s: %(message)s")
    return execute(cfg)


if __name__ == "__main__":
    sys.exit(main())
