"""
Kernel matrices and their spectra
=================================

Build the normalized kernel matrix ``K = k(x_i, x_j) / n`` on an equispaced
design and look at how fast its eigenvalues decay. Everything downstream
(risk, tuning, rates) depends on these numbers only.
"""

import numpy as np

from stkrr import KernelSpec, eigendecompose, kernel_matrix, make_design

n = 200

# first-order Sobolev kernel min(s, t) on [0, 1]; the design skips the origin
sob = KernelSpec.sobolev1()
x = make_design(sob, n)
print("sobolev design:", x.x[:3], "...", x.x[-1])

K_sob = kernel_matrix(sob, x)
E_sob = eigendecompose(K_sob)

# Gaussian kernel with bandwidth 0.1 on [-1, 1], design includes both ends
gau = KernelSpec.gaussian(0.1)
E_gau = eigendecompose(kernel_matrix(gau, make_design(gau, n)))

print("\n  i   sobolev mu_i   gaussian mu_i")
for i in (1, 2, 3, 5, 10, 20, 50):
    print(f"{i:3d}   {E_sob.mu[i - 1]:.4e}     {E_gau.mu[i - 1]:.4e}")

# Sobolev eigenvalues fall like i^-2; the Gaussian ones fall off a cliff
i = np.arange(5, 50)
slope = np.polyfit(np.log(i), np.log(E_sob.mu[i - 1]), 1)[0]
print(f"\nsobolev log-log slope over i=5..49: {slope:.2f}")
print("gaussian eigenvalues below 1e-15:", int(np.sum(E_gau.mu < 1e-15)), "of", n)

# the rank-r truncation is the best rank-r approximation of K
for r in (1, 3, 10):
    T = E_sob.truncate(r)
    err = np.linalg.norm(K_sob - T.matrix(), 2)
    print(f"r={r:2d}: ||K - K_r||_2 = {err:.4e}  (mu_(r+1) = {T.mu_next:.4e})")
