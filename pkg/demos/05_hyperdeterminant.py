"""The 2x2x2 hyperdeterminant and zero singular values.

Cayley's quartic in the eight entries of a 2x2x2 tensor vanishes exactly
when the tensor admits a zero l^2 singular value, i.e. when some unit
tuple annihilates every mode contraction.  The grid-seeded enumeration
oracle verifies both directions numerically.
"""

import numpy as np

from lptensor import DenseTensor, enumerate_critical_points, hyperdet_222

rng = np.random.default_rng(12)


def smallest_singular_value(t):
    points = enumerate_critical_points(t, 2, kind="singular", resolution=24)
    return min(abs(p.value) for p in points)


# Generic tensors are nondegenerate: hyperdeterminant away from zero and
# every critical value away from zero.
A = DenseTensor.from_array(rng.uniform(-1.0, 1.0, (2, 2, 2)))
print("random tensor:       det =", round(hyperdet_222(A), 8),
      "  min |sigma| =", round(smallest_singular_value(A), 8))

# Rank-one tensors are maximally degenerate.
u, v, w = rng.standard_normal((3, 2))
R = DenseTensor.from_array(np.einsum("i,j,k->ijk", u, v, w))
print("rank-one tensor:     det =", round(hyperdet_222(R), 12),
      "  min |sigma| =", round(smallest_singular_value(R), 12))

# Proportional slices also force degeneracy, with visible cancellation in
# the quartic rather than a zero pattern.
P = rng.standard_normal((2, 2, 2))
P[1] = -0.6 * P[0]
P = DenseTensor.from_array(P)
print("proportional slices: det =", f"{hyperdet_222(P):.2e}",
      "  min |sigma| =", f"{smallest_singular_value(P):.2e}")

# The two-corner tensor is the canonical nondegenerate point: det = +1.
arr = np.zeros((2, 2, 2))
arr[0, 0, 0] = 1.0
arr[1, 1, 1] = 1.0
C = DenseTensor.from_array(arr)
print("two-corner tensor:   det =", hyperdet_222(C),
      "  critical values:", [round(p.value, 8) for p in
                             enumerate_critical_points(C, 2, kind="singular", resolution=24)][:4])

# An independent formula: the discriminant of det(A0 + t*A1) in t agrees
# with the closed form on every tensor.
arr = rng.standard_normal((2, 2, 2))
a = np.linalg.det(arr[1])
c = np.linalg.det(arr[0])
b = np.linalg.det(arr[0] + arr[1]) - a - c
print("\nclosed form:", hyperdet_222(arr), " pencil discriminant:", b * b - 4 * a * c)
