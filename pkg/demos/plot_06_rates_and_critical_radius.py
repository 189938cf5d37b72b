"""
Convergence rates and the critical radius
=========================================

On synthetic spectra with known decay, the tuned worst-case risk should fall
like a power of the noise level gamma = sigma^2 / n. We fit that slope, then
compute the critical radius and the statistical dimension for a kernel
spectrum.
"""

import numpy as np

from stkrr import (
    KernelSpec,
    NoiseModel,
    critical_radius,
    eigendecompose,
    kernel_matrix,
    make_design,
    rate_fit,
    statistical_dimension,
    weak_bound,
    max_mse,
)

gammas = 2.0 ** -np.arange(6, 21)
for kind, param in (("poly", 1.0), ("poly", 2.0), ("exp", 1.0)):
    f = rate_fit(kind, param, 4096, gammas)
    print(f"{kind}({param:g}): slope {f.slope:.4f}  expected {f.expected:.4f}  "
          f"lambda slope {f.lambda_slope:.3f}  R^2 {f.r2:.5f}  reliable={f.reliable}")

n = 200
spec = KernelSpec.sobolev1()
E = eigendecompose(kernel_matrix(spec, make_design(spec, n)))
noise = NoiseModel.from_sigma(2.0, n)

delta = critical_radius(E, noise)
d_n = statistical_dimension(E, delta)
print(f"\ncritical radius delta_n = {delta:.6f}, delta_n^2 = {delta**2:.6f}")
print(f"statistical dimension: {d_n}")

# the simpler bound in terms of delta is looser than the exact risk
for r in (d_n, 10, n):
    lam = max(delta**2, 4 * (E.mu[r] if r < n else 0.0))
    exact = max_mse(E, r, lam, noise).max_mse
    print(f"r={r:3d} lam={lam:.4f}: exact {exact:.4e} <= bound {weak_bound(E, r, lam, delta, noise):.4e}")
