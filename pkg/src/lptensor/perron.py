"""Perron theory for nonnegative cubical tensors.

A cubical tensor is reducible when some nonempty proper index subset S
has ``a[j1, j2, ..., jk] = 0`` for every j1 outside S and all other
indices inside S; irreducible means no such subset exists (any tensor
with all entries positive is irreducible).  For nonnegative irreducible
input the mode-0 l^k eigenproblem has a positive eigenvalue with a
nonnegative eigenvector, and for any positive x the ratios

    [A(I, x, ..., x)]_i / x_i^(k-1)

bracket that eigenvalue between their minimum and maximum (the
Collatz-Wielandt bounds).  The solver is a power-type iteration on those
ratios; uniqueness and strict positivity of the limit are probed by
restarts and reported through warnings, not certified.
"""

import warnings
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .config import SolverConfig, restart_rng
from .core import homogeneous_eval, partial_contraction
from .eigen import eigen_residual
from .errors import (
    DimensionError,
    DomainError,
    PositivityWarning,
    ReducibleError,
    SizeLimitError,
    UniquenessWarning,
    ZeroTensorError,
)
from .pnorm import sign_root, unit_vector

__all__ = [
    "PerronResult",
    "is_nonnegative",
    "find_reducing_set",
    "collatz_wielandt",
    "solve_perron",
]

_SUBSET_LIMIT = 24
_STAGNATION_WINDOW = 50
_STAGNATION_FACTOR = 0.999


@dataclass(frozen=True)
class PerronResult:
    """Outcome of the power iteration on a nonnegative tensor.

    ``lower`` and ``upper`` are the final Collatz-Wielandt bounds; ``lam``
    always lies between them.  ``trace`` optionally records the bound
    history, one (lower, upper) per iteration.
    """

    lam: float
    vector: np.ndarray
    lower: float
    upper: float
    iterations: int
    converged: bool
    residual: float
    trace: tuple = None


def is_nonnegative(A):
    """True iff every entry of ``A`` is >= 0 (strict: -1e-300 fails)."""
    return bool((A.array >= 0).all())


def find_reducing_set(A):
    """Smallest (then lexicographically first) reducing subset, or None.

    Enumerates all 2^n - 2 nonempty proper subsets of the index set, so n
    is capped at 24; desk-scale tensors are far below that.  A None
    return means the tensor is irreducible.  Indices are zero-based.
    """
    if not A.is_cubical():
        raise DimensionError(f"reducibility needs a cubical tensor, got dims {A.dims}")
    n = A.dims[0]
    if n > _SUBSET_LIMIT:
        raise SizeLimitError(
            f"subset enumeration is capped at n = {_SUBSET_LIMIT}, got n = {n}"
        )
    arr = A.array
    k = A.order
    indices = range(n)
    for size in range(1, n):
        for subset in combinations(indices, size):
            outside = tuple(i for i in indices if i not in subset)
            block = arr[np.ix_(outside, *([subset] * (k - 1)))]
            if not block.any():
                return subset
    return None


def collatz_wielandt(A, x):
    """Bracketing ratios (min, max) of ``A(I, x, ..., x)_i / x_i^(k-1)``.

    Requires ``A >= 0`` and ``x > 0`` entrywise.  For irreducible A the
    Perron value lies between the two returned numbers, and they coincide
    exactly when x solves the mode-0 l^k eigenproblem.
    """
    if not is_nonnegative(A):
        raise DomainError("Collatz-Wielandt ratios need a nonnegative tensor")
    if not A.is_cubical():
        raise DimensionError(f"needs a cubical tensor, got dims {A.dims}")
    x = np.asarray(x, dtype=float)
    if x.shape != (A.dims[0],):
        raise DimensionError(
            f"mode 1: expected a vector of length {A.dims[0]}, got {x.size}"
        )
    if not (x > 0).all():
        raise DomainError("Collatz-Wielandt ratios need a strictly positive vector")
    y = partial_contraction(A, [x] * A.order, 0)
    denom = x ** (A.order - 1)
    ratios = y / denom
    return float(ratios.min()), float(ratios.max())


def _power_run(A, x0, config, collect_trace=False):
    """Power iteration from a positive start; returns a PerronResult."""
    k = A.order
    x = unit_vector(np.asarray(x0, dtype=float), k)
    damped = False
    lower = upper = np.nan
    trace = [] if collect_trace else None
    converged = False
    iterations = 0
    gaps = []
    for it in range(1, config.max_iter + 1):
        iterations = it
        y = partial_contraction(A, [x] * k, 0)
        if (x > 0).all():
            ratios = y / x ** (k - 1)
            lower, upper = float(ratios.min()), float(ratios.max())
            if trace is not None:
                trace.append((lower, upper))
            gap = upper - lower
            if gap <= config.tol * max(1.0, lower):
                converged = True
                break
            gaps.append(gap)
            if (
                not damped
                and len(gaps) > _STAGNATION_WINDOW
                and gaps[-1] > _STAGNATION_FACTOR * gaps[-1 - _STAGNATION_WINDOW]
            ):
                damped = True
        z = sign_root(y, k - 1)
        if damped:
            step = x + z
        else:
            step = z
            if not step.any():
                break
            if (step == 0).any():
                # keep iterates strictly positive from here on
                damped = True
                step = x + z
        x = unit_vector(step, k)
    lam = homogeneous_eval(A, x)
    if np.isfinite(lower) and np.isfinite(upper):
        # the evaluation is a convex combination of the ratios, so any
        # excursion outside the bracket is pure rounding
        lam = min(max(lam, lower), upper)
    residual = eigen_residual(A, x, lam, k, mode=0)
    return PerronResult(
        lam=float(lam),
        vector=x.copy(),
        lower=lower,
        upper=upper,
        iterations=iterations,
        converged=converged,
        residual=residual,
        trace=tuple(trace) if trace is not None else None,
    )


def solve_perron(A, config=None, force=False, collect_trace=False):
    """Positive l^k eigenpair of a nonnegative irreducible tensor.

    :param A: nonnegative DenseTensor; must be irreducible unless
        ``force=True`` overrides the check.
    :param config: SolverConfig.  ``config.restarts - 1`` extra runs from
        random positive starts probe uniqueness of the eigenpair; the
        reported result always comes from the deterministic uniform start.
    :param force: skip the reducibility precondition.
    :param collect_trace: record the Collatz-Wielandt bounds per iteration.
    :returns: PerronResult; ``converged`` reflects the relative bound gap.

    Warns with PositivityWarning when the converged vector has entries
    below 1e-12, and with UniquenessWarning when a restart converges to a
    visibly different nonnegative eigenpair.
    """
    config = config or SolverConfig()
    if not is_nonnegative(A):
        raise DomainError("the Perron solver needs a nonnegative tensor")
    if A.is_zero():
        raise ZeroTensorError("the zero tensor has no positive eigenvalue")
    if not A.is_cubical():
        raise DimensionError(f"the Perron solver needs a cubical tensor, got dims {A.dims}")
    if not force:
        reducing = find_reducing_set(A)
        if reducing is not None:
            shown = "{" + ", ".join(str(i + 1) for i in reducing) + "}"
            raise ReducibleError(
                f"tensor is reducible (index set {shown} reduces it); "
                "pass force=True to iterate anyway",
                reducing_set=reducing,
            )
    n = A.dims[0]
    result = _power_run(A, np.ones(n), config, collect_trace=collect_trace)
    if result.converged and (result.vector <= 1e-12).any():
        warnings.warn(
            "computed eigenvector has entries at or below 1e-12; positivity "
            "is not established for this input",
            PositivityWarning,
            stacklevel=2,
        )
    if result.converged and config.restarts > 1:
        for r in range(1, config.restarts):
            rng = restart_rng(config, r)
            start = rng.uniform(0.1, 1.0, size=n)
            other = _power_run(A, start, config)
            if not other.converged:
                continue
            if (
                abs(other.lam - result.lam) > 1e-6 * max(1.0, abs(result.lam))
                or np.max(np.abs(other.vector - result.vector)) > 1e-6
            ):
                warnings.warn(
                    "restarts found more than one nonnegative eigenpair; "
                    "the reported one comes from the uniform start",
                    UniquenessWarning,
                    stacklevel=2,
                )
                break
    return result
