"""
Choosing lambda and the truncation level
========================================

Tune lambda for full KRR, read off the smallest rank whose dropped
eigenvalues are already below the worst-case approximation error, and check
that truncating there costs nothing in worst-case risk.
"""

import numpy as np

from stkrr import (
    KernelSpec,
    NoiseModel,
    domination_check,
    eigendecompose,
    kernel_matrix,
    make_design,
    optimal_truncation,
    r_of_lambda,
)

n = 200
noise = NoiseModel.from_sigma(2.0, n)

for spec in (KernelSpec.sobolev1(), KernelSpec.gaussian(0.1), KernelSpec.gaussian(10.0)):
    E = eigendecompose(kernel_matrix(spec, make_design(spec, n)))
    rep = optimal_truncation(E, noise)
    name = spec.kind + (f"(b={spec.bandwidth:g})" if spec.bandwidth else "")
    print(f"{name:18s} lambda_n={rep.lambda_n:.4e}  r_n={rep.r_n:3d}  "
          f"full risk={rep.min_risk_full:.4e}  truncated risk={rep.min_risk_truncated:.4e}")

# the rank rule r(lambda) shrinks as lambda grows
spec = KernelSpec.sobolev1()
E = eigendecompose(kernel_matrix(spec, make_design(spec, n)))
print("\nlambda       r(lambda)")
for lam in np.geomspace(1e-4, 1.0, 5):
    print(f"{lam:.1e}    {r_of_lambda(E, lam)}")

# any rank at or above r(lambda) is no worse than full KRR
lam = 0.05
for r in (r_of_lambda(E, lam), 20, 100):
    d = domination_check(E, noise, lam, r)
    print(f"r={r:3d}: truncated {d.lhs:.6e} <= full {d.rhs:.6e}: {d.holds}  (EE tail dropped {d.gap:.2e})")
