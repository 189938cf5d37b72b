"""
Fitting truncated KRR on noisy data
===================================

Draw a random target from the RKHS unit ball, add noise, fit the truncated
estimator for a few ranks and compare in-sample and out-of-sample error.
"""

import numpy as np

from stkrr import KernelSpec, eigendecompose, fit, kernel_matrix, make_design, predict_at, sample_ball_target

n, sigma, lam = 100, 0.5, 1e-3
spec = KernelSpec.sobolev1()
design = make_design(spec, n)
K = kernel_matrix(spec, design)
E = eigendecompose(K)

# target f* = (1/sqrt(n)) sum_j omega_j k(., x_j) with ||f*||_H = 1
target = sample_ball_target(E, K, np.random.SeedSequence(3))
print("||f*||_H^2 =", round(target.hilbert_norm_sq, 12))

rng = np.random.default_rng(0)
y = np.sqrt(n) * target.u_star + sigma * rng.standard_normal(n)

# evaluate off the design on a fine grid
grid = np.linspace(0.001, 1.0, 500)
kx = spec(grid[:, None], design.x[None, :])
f_true = kx @ target.omega_star / np.sqrt(n)

print("\n   r   in-sample MSE   off-design MSE")
for r in (1, 3, 10, 30, n):
    est = fit(E, r, lam, y)
    in_sample = np.sum((est.fitted_u - target.u_star) ** 2)  # ||f_hat - f*||_n^2
    off = np.mean((predict_at(est, spec, design, grid) - f_true) ** 2)
    print(f"{r:4d}   {in_sample:.4e}      {off:.4e}")

# fitted values are sqrt(n) u, the function values at the design
est = fit(E, 10, lam, y)
print("\nmax |f_hat(x_i) - fitted_values_i| =",
      np.max(np.abs(predict_at(est, spec, design, design.x) - est.fitted_values)))
