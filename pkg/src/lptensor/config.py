"""Solver configuration shared by the singular, eigen and Perron solvers."""

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

__all__ = ["SolverConfig", "restart_rng"]


@dataclass(frozen=True)
class SolverConfig:
    """Tolerance, iteration budget and restart schedule for the solvers.

    ``seed`` fixes every random start: restart number ``i`` draws from a
    generator seeded by ``(seed, i)``, so results do not depend on the
    order restarts are executed in.
    """

    tol: float = 1e-10
    max_iter: int = 1000
    restarts: int = 32
    seed: int = 1

    def __post_init__(self):
        if not self.tol > 0:
            raise ParameterError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise ParameterError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.restarts < 1:
            raise ParameterError(f"restarts must be >= 1, got {self.restarts}")
        if self.seed < 0:
            raise ParameterError(f"seed must be a nonnegative integer, got {self.seed}")


def restart_rng(config, index):
    """Deterministic per-restart generator derived from the config seed."""
    return np.random.default_rng((config.seed, index))
