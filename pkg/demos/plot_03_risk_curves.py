"""
Worst-case risk curves
======================

The supremum of the MSE over the unit ball has a closed form in the
eigenvalues: a worst-case approximation error plus an estimation error. Here
we trace it over lambda for several ranks and check it against random targets.
"""

import numpy as np

from stkrr import (
    KernelSpec,
    NoiseModel,
    eigendecompose,
    kernel_matrix,
    make_design,
    max_mse,
    max_over_ball_probe,
    risk_curve,
)

n = 200
spec = KernelSpec.sobolev1()
K = kernel_matrix(spec, make_design(spec, n))
E = eigendecompose(K)
noise = NoiseModel.from_sigma(2.0, n)

lams = np.geomspace(1e-4, 1.0, 9) * E.mu[0]
print("lambda/mu_1   " + "  ".join(f"r={r:<8d}" for r in (1, 3, 10, n)))
curves = {r: risk_curve(E, r, lams, noise) for r in (1, 3, 10, n)}
for k, lam in enumerate(lams):
    print(f"{lam / E.mu[0]:.1e}      " + "  ".join(f"{curves[r].points[k].max_mse:.4e}" for r in curves))

for r, c in curves.items():
    print(f"r={r}: best lambda on grid {c.argmin_lambda:.3e}, risk {c.min_risk:.4e}")

# split of the risk at one point
p = max_mse(E, 3, 0.05, noise)
print(f"\nr=3, lam=0.05: WAE={p.wae:.4e}  EE={p.ee:.4e}  total={p.max_mse:.4e}")

# random unit-norm targets never exceed the closed-form supremum
probe = max_over_ball_probe(E, K, 0.05, 3, noise, num_targets=200, seed=1)
print(f"largest exact MSE over 200 random targets: {probe:.4e}")
