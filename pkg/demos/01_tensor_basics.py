"""Dense tensors and multilinear evaluation.

A walk through the core objects: building a tensor, evaluating its
multilinear form, taking gradients by partial contraction, and checking
the symmetry utilities.
"""

import numpy as np

from lptensor import (
    DenseTensor,
    homogeneous_eval,
    homogeneous_gradient,
    is_symmetric,
    multilinear_eval,
    multilinear_transform,
    partial_contraction,
    symmetrize,
)

# A tensor is a flat value list plus its dimensions; the last index varies
# fastest, exactly like the JSON file format the CLI reads.
T = DenseTensor([2, 2, 2], [1, 0, 0, 0, 0, 0, 0, 1])
print("tensor:", T)
print("entry (0,0,0):", T[0, 0, 0], " entry (1,1,1):", T[1, 1, 1])

# The multilinear form pairs one vector with each mode.
x = np.array([1.0, 2.0])
print("\nA(x, x, x) =", multilinear_eval(T, [x, x, x]))

# Leaving one slot open yields the gradient with respect to that argument.
g = partial_contraction(T, [x, x, x], 0)
print("gradient in mode 1:", g)

# Multiplying every mode by a matrix transforms the tensor covariantly;
# single column vectors collapse it to the scalar form value.
collapsed = multilinear_transform(T, [x, x, x])
print("collapsed to 1x1x1:", collapsed.array.ravel())

# Symmetry: this tensor is invariant under all index permutations.
print("\nis_symmetric:", is_symmetric(T))

rng = np.random.default_rng(0)
R = DenseTensor.from_array(rng.standard_normal((3, 3, 3)))
S = symmetrize(R)
print("random tensor symmetric?", is_symmetric(R), " after symmetrize:", is_symmetric(S))

# Symmetrization preserves the homogeneous polynomial A(x, ..., x).
y = rng.standard_normal(3)
print("form before:", homogeneous_eval(R, y), " after:", homogeneous_eval(S, y))

# For symmetric tensors the polynomial gradient is k times the contraction.
print("polynomial gradient:", homogeneous_gradient(S, y))
