"""l^p singular values and eigenvalues of dense real tensors.

A small numpy library for the variational spectral theory of tensors:
multilinear evaluation and contraction, l^p singular pairs of general
tensors, l^p eigenpairs of cubical tensors (including the p=2 and p=k
special cases), a Perron solver for nonnegative irreducible tensors with
Collatz-Wielandt bounds, and brute-force verification oracles (grid-seeded
polishing, from-scratch Jacobi baselines, the 2x2x2 hyperdeterminant).
"""

from .config import SolverConfig
from .core import (
    DenseTensor,
    homogeneous_eval,
    homogeneous_gradient,
    is_symmetric,
    multilinear_eval,
    multilinear_transform,
    pair_contraction,
    partial_contraction,
    symmetrize,
)
from .eigen import (
    EigenPair,
    eigen_residual,
    solve_mode_eigenpairs,
    solve_symmetric_eigenpairs,
)
from .oracle import (
    CriticalPoint,
    dense_baseline_svd,
    dense_baseline_symeig,
    enumerate_critical_points,
    hyperdet_222,
)
from .perron import (
    PerronResult,
    collatz_wielandt,
    find_reducing_set,
    is_nonnegative,
    solve_perron,
)
from .pnorm import PNormSpec, lp_norm, lp_norm_gradient, sign_power, sign_root, unit_vector
from .singular import (
    SingularPair,
    sigma_max,
    singular_residual,
    solve_singular_pair,
    solve_singular_pairs,
)

__version__ = "0.1.0"

__all__ = [
    "DenseTensor",
    "PNormSpec",
    "SolverConfig",
    "SingularPair",
    "EigenPair",
    "PerronResult",
    "CriticalPoint",
    "multilinear_eval",
    "multilinear_transform",
    "partial_contraction",
    "pair_contraction",
    "homogeneous_eval",
    "homogeneous_gradient",
    "is_symmetric",
    "symmetrize",
    "lp_norm",
    "sign_power",
    "sign_root",
    "lp_norm_gradient",
    "unit_vector",
    "singular_residual",
    "solve_singular_pair",
    "solve_singular_pairs",
    "sigma_max",
    "eigen_residual",
    "solve_symmetric_eigenpairs",
    "solve_mode_eigenpairs",
    "is_nonnegative",
    "find_reducing_set",
    "collatz_wielandt",
    "solve_perron",
    "enumerate_critical_points",
    "hyperdet_222",
    "dense_baseline_svd",
    "dense_baseline_symeig",
    "__version__",
]
