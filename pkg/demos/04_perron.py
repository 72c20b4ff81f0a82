"""Perron theory for nonnegative tensors.

An irreducible nonnegative tensor has a positive eigenvalue for the p = k
eigenproblem, with a nonnegative eigenvector, and for any positive vector
the component ratios of the contraction bracket that eigenvalue.  The
solver iterates until the bracket collapses.
"""

import numpy as np

from lptensor import (
    DenseTensor,
    SolverConfig,
    collatz_wielandt,
    find_reducing_set,
    is_nonnegative,
    solve_perron,
)
from lptensor.errors import ReducibleError

# The all-ones tensor is the cleanest example: lambda = n^(k-1) with the
# uniform vector, reached in one step from the uniform start.
T = DenseTensor.from_array(np.ones((3, 3, 3)))
result = solve_perron(T, SolverConfig(restarts=2))
print("all-ones 3x3x3:  lambda =", result.lam, " vector =", np.round(result.vector, 8))

# A random positive tensor: watch the Collatz-Wielandt bounds close in.
rng = np.random.default_rng(5)
A = DenseTensor.from_array(rng.uniform(0.0, 1.0, (3, 3, 3)))
print("\nnonnegative:", is_nonnegative(A), " reducing set:", find_reducing_set(A))
result = solve_perron(A, SolverConfig(restarts=2), collect_trace=True)
print("iteration trace (lower, upper):")
for it, (lo, up) in enumerate(result.trace[:8], start=1):
    print(f"  {it:2d}: [{lo:.12f}, {up:.12f}]  gap {up - lo:.1e}")
print("lambda =", result.lam, " residual =", f"{result.residual:.2e}", " iterations =", result.iterations)

# Bounds from any positive test vector bracket the eigenvalue.
lo, up = collatz_wielandt(A, np.array([1.0, 2.0, 0.5]))
print(f"\nbounds from a rough guess: [{lo:.6f}, {up:.6f}]  (lambda = {result.lam:.6f})")

# Reducible tensors are rejected unless forced: a diagonal tensor keeps
# its blocks decoupled, so the positive eigenvector may not exist.
arr = np.zeros((2, 2, 2))
arr[0, 0, 0] = 1.0
arr[1, 1, 1] = 2.0
D = DenseTensor.from_array(arr)
try:
    solve_perron(D)
except ReducibleError as err:
    print("\nreducible:", err)
forced = solve_perron(D, SolverConfig(restarts=1, max_iter=200), force=True)
print("forced anyway:", "converged" if forced.converged else "did not converge",
      " best lambda =", round(forced.lam, 6))
