"""l^p eigenpairs of symmetric and nonsymmetric cubical tensors.

The p = 2 pairs generalize matrix eigenpairs through the unit sphere
constraint; the p = k pairs make the defining system homogeneous.  For
nonsymmetric tensors each mode carries its own family, one identity slot
at a time.
"""

import numpy as np

from lptensor import (
    DenseTensor,
    SolverConfig,
    dense_baseline_symeig,
    eigen_residual,
    solve_mode_eigenpairs,
    solve_symmetric_eigenpairs,
    symmetrize,
)

# --- matrix case: the solver agrees with a Jacobi eigendecomposition -------
rng = np.random.default_rng(21)
M = rng.standard_normal((4, 4))
M = (M + M.T) / 2.0
pairs = solve_symmetric_eigenpairs(DenseTensor.from_array(M), 2, SolverConfig(restarts=48))
w, _ = dense_baseline_symeig(M)
print("solver: ", np.round([p.lam for p in pairs], 10))
print("jacobi: ", np.round(w, 10))

# --- a diagonal order-3 tensor has closed-form pairs ------------------------
arr = np.zeros((2, 2, 2))
arr[0, 0, 0] = 1.0
arr[1, 1, 1] = 1.0
D = DenseTensor.from_array(arr)

# p = 3 decouples the coordinates...
h_pairs = solve_symmetric_eigenpairs(D, 3, SolverConfig(restarts=16))
print("\np=3 eigenvalues:", [round(p.lam, 9) for p in h_pairs])

# ...while p = 2 adds the interior pair with lambda = ab / sqrt(a^2 + b^2).
z_pairs = solve_symmetric_eigenpairs(D, 2, SolverConfig(restarts=16))
print("p=2 eigenvalues:", [round(p.lam, 9) for p in z_pairs], " (1/sqrt(2) =", round(1 / np.sqrt(2), 9), ")")

# --- generic symmetric tensor: all modes tell the same story ----------------
S = symmetrize(DenseTensor.from_array(rng.standard_normal((3, 3, 3))))
for mode in range(3):
    values = [round(p.lam, 8) for p in solve_mode_eigenpairs(S, mode, 2, SolverConfig(restarts=24))]
    print(f"mode {mode + 1} eigenvalues:", values)

# --- nonsymmetric: left and right families differ in vectors ----------------
N = np.array([[2.0, 1.0], [0.0, 1.0]])
T = DenseTensor.from_array(N)
right = solve_mode_eigenpairs(T, 0, 2, SolverConfig(restarts=16))
left = solve_mode_eigenpairs(T, 1, 2, SolverConfig(restarts=16))
print("\nright pairs:", [(round(p.lam, 6), np.round(p.vector, 6).tolist()) for p in right])
print("left pairs: ", [(round(p.lam, 6), np.round(p.vector, 6).tolist()) for p in left])
for p in right:
    print("  right residual:", f"{eigen_residual(T, p.vector, p.lam, 2, 0):.1e}")
