"""Kernels on an interval, fixed designs and the normalized empirical kernel matrix.

Two kernels are built in: the Gaussian kernel ``exp(-(s - t)^2 / (2 b^2))`` and
the first-order Sobolev kernel ``min(s, t)``. New kernels are added by
registering a vectorized function in :data:`KERNELS`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError


def _gaussian(s, t, bandwidth):
    return np.exp(-((s - t) ** 2) / (2.0 * bandwidth**2))


def _sobolev1(s, t, bandwidth):
    return np.minimum(s, t)


#: kind -> vectorized kernel function ``f(s, t, bandwidth)``
KERNELS: dict[str, Callable] = {
    "gaussian": _gaussian,
    "sobolev1": _sobolev1,
}


class Scheme(str, enum.Enum):
    CLOSED = "closed"
    OPEN_LEFT = "open-left"


@dataclass(frozen=True)
class KernelSpec:
    """Kernel choice together with the interval it is defined on."""

    kind: str
    domain: tuple[float, float]
    bandwidth: float | None = None

    def __post_init__(self):
        if self.kind not in KERNELS:
            raise ValueError(f"unknown kernel kind {self.kind!r}; known: {sorted(KERNELS)}")
        a, b = (float(v) for v in self.domain)
        if not a < b:
            raise ValueError(f"empty domain [{a}, {b}]")
        object.__setattr__(self, "domain", (a, b))
        if self.kind == "gaussian":
            if self.bandwidth is None or not self.bandwidth > 0:
                raise ValueError("gaussian kernel needs a positive bandwidth")
        if self.kind == "sobolev1" and a < 0:
            # min(s, t) is only PSD on the nonnegative half-line
            raise ValueError("sobolev1 kernel needs a domain inside [0, inf)")

    @classmethod
    def gaussian(cls, bandwidth: float = 0.1, domain=(-1.0, 1.0)) -> "KernelSpec":
        return cls("gaussian", tuple(domain), float(bandwidth))

    @classmethod
    def sobolev1(cls, domain=(0.0, 1.0)) -> "KernelSpec":
        return cls("sobolev1", tuple(domain))

    @property
    def default_scheme(self) -> Scheme:
        # x = 0 gives a zero row for min(s, t), so skip the left endpoint there
        return Scheme.OPEN_LEFT if self.kind == "sobolev1" else Scheme.CLOSED

    def check_inside(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        a, b = self.domain
        bad = ~((x >= a) & (x <= b))
        if np.any(bad):
            raise DomainError(f"points {x[bad][:5]} outside domain [{a}, {b}]")
        return x

    def __call__(self, s, t):
        """Vectorized kernel evaluation with broadcasting; no domain check."""
        return KERNELS[self.kind](np.asarray(s, dtype=float), np.asarray(t, dtype=float), self.bandwidth)


@dataclass(frozen=True)
class DesignPoints:
    x: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float).ravel()
        if x.size < 1:
            raise ValueError("design needs at least one point")
        if np.any(np.diff(x) <= 0):
            raise ValueError("design points must be strictly increasing")
        x.setflags(write=False)
        object.__setattr__(self, "x", x)

    @property
    def n(self) -> int:
        return self.x.size

    def __len__(self):
        return self.x.size


def eval_kernel(spec: KernelSpec, s: float, t: float) -> float:
    spec.check_inside([s, t])
    return float(spec(s, t))


def make_design(spec: KernelSpec, n: int, scheme: Scheme | str | None = None) -> DesignPoints:
    """Equispaced design of ``n`` points on ``spec.domain``.

    ``closed`` includes both endpoints, ``open-left`` drops the left one:
    ``a + (b - a) * i / n`` for ``i = 1..n``. The default depends on the kernel.
    """
    if int(n) != n or n < 2:
        raise ValueError(f"design size must be an integer >= 2, got {n}")
    n = int(n)
    scheme = spec.default_scheme if scheme is None else Scheme(scheme)
    a, b = spec.domain
    if scheme is Scheme.CLOSED:
        x = a + (b - a) * np.arange(n) / (n - 1)
    else:
        x = a + (b - a) * np.arange(1, n + 1) / n
    x[-1] = b
    return DesignPoints(x)


def kernel_matrix(spec: KernelSpec, design: DesignPoints) -> np.ndarray:
    """Normalized kernel matrix ``K[i, j] = k(x_i, x_j) / n``.

    Both built-in kernels are symmetric functions, so the result is exactly
    symmetric.
    """
    x = spec.check_inside(design.x)
    return spec(x[:, None], x[None, :]) / x.size
