"""Singular pairs of tensors under l^p mode norms.

For matrices with p = 2 this machinery reproduces the classical SVD; for
higher order tensors it computes the critical tuples of the multilinear
form constrained to unit mode vectors.
"""

import numpy as np

from lptensor import (
    DenseTensor,
    SolverConfig,
    dense_baseline_svd,
    sigma_max,
    singular_residual,
    solve_singular_pairs,
)

# --- matrices first: p = (2, 2) recovers the SVD ---------------------------
rng = np.random.default_rng(7)
M = rng.standard_normal((4, 4))
pairs = solve_singular_pairs(DenseTensor.from_array(M), 2, SolverConfig(restarts=48))
svd_sigmas, _, _ = dense_baseline_svd(M)

print("solver sigmas: ", np.round([p.sigma for p in pairs], 10))
print("jacobi sigmas: ", np.round(svd_sigmas, 10))

# --- an order-3 tensor ------------------------------------------------------
T = DenseTensor.from_array(rng.standard_normal((2, 2, 2)))
for p in (2, 3):
    pairs = solve_singular_pairs(T, p, SolverConfig(restarts=24))
    print(f"\nl^{p} singular values:", np.round([q.sigma for q in pairs], 8))
    top = pairs[0]
    print("  top pair residual:", f"{top.residual:.2e}")
    print("  mode vectors:", [np.round(v, 6).tolist() for v in top.vectors])

# The largest singular value is the norm of the multilinear functional:
# no unit tuple can beat it.  Compare against a brute-force sphere grid.
best = sigma_max(T, 2, SolverConfig(restarts=24))
theta = np.linspace(0.0, np.pi, 60, endpoint=False)
circle = np.stack([np.cos(theta), np.sin(theta)], axis=1)
grid = np.abs(np.einsum("abc,ia,jb,kc->ijk", T.array, circle, circle, circle))
print("\nsigma_max:", round(best, 10), " best grid quotient:", round(float(grid.max()), 10))

# Residuals scale like alpha^(k-1) when every p equals the order, so
# solutions of the p = k problem form scale-invariant rays.
pair = solve_singular_pairs(T, 3, SolverConfig(restarts=24))[0]
for alpha in (0.5, 2.0):
    scaled = [alpha * v for v in pair.vectors]
    print(
        f"residual at alpha={alpha}:",
        f"{singular_residual(T, scaled, pair.sigma, 3):.2e}",
    )
