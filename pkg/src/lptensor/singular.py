"""l^{p_1,...,p_k} singular pairs of general dense tensors.

A singular pair of a tensor A is a tuple of unit mode vectors
(x_1, ..., x_k) together with a scalar sigma such that contracting A with
every vector but the i-th yields ``sigma * sign_power(x_i, p_i - 1)`` in
each mode i.  For matrices with p = (2, 2) this reduces to the ordinary
singular value decomposition conditions ``A v = sigma u`` and
``A^T u = sigma v``.

The solver combines two searches from every random restart: cyclic
alternating updates (each update solves one mode's stationarity exactly,
given the others, and converges fast to extremal pairs) and a damped
Gauss-Newton corrector on the full stationarity-plus-normalization system,
which can also land on non-extremal pairs that no monotone iteration can
reach.  Convergence is always declared on the residual, never on iterate
movement.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from ._polish import gauss_newton
from .config import SolverConfig, restart_rng
from .core import multilinear_eval, pair_contraction, partial_contraction
from .errors import (
    ConvergenceWarning,
    DegenerateIterateError,
    ZeroTensorError,
)
from .pnorm import PNormSpec, lp_norm, sign_power, sign_root, unit_vector

__all__ = [
    "SingularPair",
    "singular_residual",
    "solve_singular_pair",
    "solve_singular_pairs",
    "sigma_max",
]

_DEDUP_TOL = 1e-6
_STAGNATION_WINDOW = 50
_STAGNATION_FACTOR = 0.999


@dataclass(frozen=True)
class SingularPair:
    """One critical tuple of the constrained multilinear problem.

    ``vectors[i]`` has unit l^{p_i} norm, ``sigma`` is nonnegative by
    convention (negating one mode vector negates sigma, so nothing is
    lost), and ``residual`` is the worst stationarity defect over modes.
    """

    vectors: tuple
    sigma: float
    residual: float
    pnorms: PNormSpec
    converged: bool


def _spec(A, pnorms):
    if isinstance(pnorms, PNormSpec):
        if len(pnorms) != A.order:
            return PNormSpec.broadcast(pnorms.exponents, A.order)
        return pnorms
    return PNormSpec.broadcast(pnorms, A.order)


def singular_residual(A, vectors, sigma, pnorms):
    """Worst-mode stationarity defect of a candidate pair.

    Returns ``max_i || A(..., I at i, ...) - sigma * sign_power(x_i, p_i-1) ||_2``,
    which is zero exactly at singular pairs with unit mode norms.
    """
    pn = _spec(A, pnorms)
    vecs = [np.asarray(v, dtype=float) for v in vectors]
    worst = 0.0
    for i in range(A.order):
        g = partial_contraction(A, vecs, i)
        defect = g - sigma * sign_power(vecs[i], pn[i] - 1)
        worst = max(worst, float(np.linalg.norm(defect)))
    return worst


def _make_pair(A, pn, vectors, tol):
    """Normalize, apply the sigma >= 0 convention, and grade a candidate."""
    vecs = [unit_vector(v, pn[i]) for i, v in enumerate(vectors)]
    sigma = multilinear_eval(A, vecs)
    if sigma < 0.0:
        vecs[0] = -vecs[0]
        sigma = -sigma
    res = singular_residual(A, vecs, sigma, pn)
    return SingularPair(
        vectors=tuple(v.copy() for v in vecs),
        sigma=float(sigma),
        residual=res,
        pnorms=pn,
        converged=res <= tol,
    )


def _leading_negative(x):
    """Sign of the first component within a factor 10 of the largest.

    Residual-flat directions near degenerate pairs can carry junk of size
    ~sqrt(tol); only entries of significant size may pick the orientation.
    """
    significant = np.flatnonzero(np.abs(x) >= 0.1 * np.max(np.abs(x)))
    return x[significant[0]] < 0


def _canonical_key(pair):
    """Representative under the even-sign-flip symmetry, for dedup."""
    vecs = [v.copy() for v in pair.vectors]
    for i in range(1, len(vecs)):
        if _leading_negative(vecs[i]):
            vecs[i] = -vecs[i]
            vecs[0] = -vecs[0]
    return np.concatenate([[pair.sigma]] + vecs)


def _alternating_run(A, pn, start, config):
    """Cyclic alternating updates from one start; returns best iterate."""
    k = A.order
    xs = [v.copy() for v in start]
    best_xs, best_res = None, np.inf
    trail = []
    for _ in range(config.max_iter):
        for i in range(k):
            g = partial_contraction(A, xs, i)
            if not g.any():
                # the current tuple may itself be a sigma = 0 pair
                sigma = multilinear_eval(A, xs)
                if singular_residual(A, xs, sigma, pn) <= config.tol:
                    return [x.copy() for x in xs], 0.0
                raise DegenerateIterateError(
                    f"mode {i + 1}: exactly zero update direction"
                )
            xs[i] = unit_vector(sign_root(g, pn[i] - 1), pn[i])
        sigma = multilinear_eval(A, xs)
        res = singular_residual(A, xs, sigma, pn)
        if res < best_res:
            best_res = res
            best_xs = [x.copy() for x in xs]
        if res <= config.tol:
            break
        trail.append(best_res)
        if (
            len(trail) > _STAGNATION_WINDOW
            and trail[-1] > _STAGNATION_FACTOR * trail[-1 - _STAGNATION_WINDOW]
        ):
            break
    return best_xs, best_res


def _system_functions(A, pn):
    """Residual and Jacobian of the stationarity + normalization system.

    Unknowns are the concatenated mode vectors followed by sigma.  The
    system has sum(d_i) + k equations for sum(d_i) + 1 unknowns, so the
    corrector works in least squares.
    """
    dims = A.dims
    k = A.order
    offs = np.cumsum([0] + list(dims))
    nvar = offs[-1] + 1

    def split(z):
        return [z[offs[i]:offs[i + 1]] for i in range(k)], z[offs[-1]]

    def residual(z):
        xs, sigma = split(z)
        rows = []
        for i in range(k):
            g = partial_contraction(A, xs, i)
            rows.append(g - sigma * sign_power(xs[i], pn[i] - 1))
        for i in range(k):
            rows.append(np.array([np.sum(np.abs(xs[i]) ** pn[i]) - 1.0]))
        return np.concatenate(rows)

    def jacobian(z):
        xs, sigma = split(z)
        neq = offs[-1] + k
        J = np.zeros((neq, nvar))
        for i in range(k):
            r0 = offs[i]
            q = pn[i] - 1
            for j in range(k):
                if j == i:
                    deriv = q * np.abs(xs[i]) ** (q - 1) if q > 1 else np.ones(dims[i])
                    J[r0:r0 + dims[i], offs[i]:offs[i + 1]] = -sigma * np.diag(deriv)
                else:
                    J[r0:r0 + dims[i], offs[j]:offs[j + 1]] = pair_contraction(
                        A, xs, i, j
                    )
            J[r0:r0 + dims[i], nvar - 1] = -sign_power(xs[i], q)
        for i in range(k):
            J[offs[-1] + i, offs[i]:offs[i + 1]] = pn[i] * sign_power(xs[i], pn[i] - 1)
        return J

    return residual, jacobian, split


def _polish_candidate(A, pn, xs, config):
    """Gauss-Newton correction of a tuple; None if it fails to converge."""
    residual, jacobian, split = _system_functions(A, pn)
    sigma0 = multilinear_eval(A, xs)
    z0 = np.concatenate([np.concatenate(xs), [sigma0]])
    z, _ = gauss_newton(residual, jacobian, z0, tol=min(config.tol * 1e-3, 1e-13))
    vecs, _ = split(z)
    if any(lp_norm(v, pn[i]) < 0.5 for i, v in enumerate(vecs)):
        return None
    pair = _make_pair(A, pn, vecs, config.tol)
    return pair if pair.converged else None


def _random_start(rng, dims, pn):
    xs = []
    for i, d in enumerate(dims):
        g = rng.standard_normal(d)
        while lp_norm(g, pn[i]) < 1e-8:
            g = rng.standard_normal(d)
        xs.append(unit_vector(g, pn[i]))
    return xs


def _collect(A, pnorms, config):
    """Run all restarts; return (deduped converged pairs, best overall)."""
    if A.is_zero():
        raise ZeroTensorError("singular pairs of the zero tensor are undefined")
    pn = _spec(A, pnorms)
    config = config or SolverConfig()
    converged = []
    best = None
    degenerate = None
    for r in range(config.restarts):
        rng = restart_rng(config, r)
        start = _random_start(rng, A.dims, pn)
        polished = _polish_candidate(A, pn, start, config)
        if polished is not None:
            converged.append(polished)
        try:
            xs, _ = _alternating_run(A, pn, start, config)
        except DegenerateIterateError as exc:
            degenerate = exc
            continue
        # always squeeze with the corrector so flat-direction junk of size
        # ~sqrt(tol) cannot survive into deduplication
        pair = _polish_candidate(A, pn, xs, config)
        if pair is None:
            pair = _make_pair(A, pn, xs, config.tol)
        if pair.converged:
            converged.append(pair)
        if best is None or pair.residual < best.residual:
            best = pair
    if best is None and not converged:
        if degenerate is not None:
            raise degenerate
        raise ZeroTensorError("no usable iterate produced")  # pragma: no cover
    deduped = _dedup(converged)
    return deduped, best


def _dedup(pairs):
    kept = []
    keys = []
    for pair in sorted(pairs, key=lambda p: (-p.sigma, p.residual)):
        key = _canonical_key(pair)
        if any(
            key.size == other.size and np.max(np.abs(key - other)) <= _DEDUP_TOL
            for other in keys
        ):
            continue
        kept.append(pair)
        keys.append(key)
    kept.sort(key=lambda p: (-p.sigma, tuple(p.vectors[0])))
    return kept


def solve_singular_pairs(A, pnorms=2, config=None):
    """All distinct converged singular pairs found by the restart schedule.

    :param A: DenseTensor to decompose.
    :param pnorms: PNormSpec, an integer, or one integer per mode.
    :param config: SolverConfig; defaults apply when omitted.
    :returns: pairs sorted by sigma descending, deduplicated up to the
        even-sign-flip symmetry.  May be empty if nothing converged.
    """
    deduped, _ = _collect(A, pnorms, config)
    return deduped


def solve_singular_pair(A, pnorms=2, config=None, init=None):
    """One singular pair of ``A``.

    With ``init`` the solver runs only from that tuple (alternating
    updates plus a Gauss-Newton finish).  Otherwise it runs the full
    restart schedule and returns the converged pair with the largest
    sigma, or, failing convergence everywhere, the best iterate seen with
    ``converged=False``.
    """
    config = config or SolverConfig()
    pn = _spec(A, pnorms)
    if init is not None:
        if A.is_zero():
            raise ZeroTensorError("singular pairs of the zero tensor are undefined")
        start = [unit_vector(np.asarray(v, dtype=float), pn[i]) for i, v in enumerate(init)]
        xs, _ = _alternating_run(A, pn, start, config)
        pair = _polish_candidate(A, pn, xs, config)
        if pair is None:
            pair = _make_pair(A, pn, xs, config.tol)
        return pair
    deduped, best = _collect(A, pnorms, config)
    if deduped:
        return deduped[0]
    return best


def sigma_max(A, pnorms=2, config=None):
    """Largest singular value located by the restart schedule.

    A lower bound on the true norm of the multilinear functional; with the
    default restart budget it is tight on desk-scale problems.  Warns when
    no restart converged.
    """
    deduped, best = _collect(A, pnorms, config)
    if deduped:
        return deduped[0].sigma
    warnings.warn(
        "no restart converged; returning the best non-converged sigma",
        ConvergenceWarning,
        stacklevel=2,
    )
    return best.sigma
