"""Exception and warning types shared across the package.

Modes are numbered from zero everywhere in the library API; error messages
render them one-based because that is how the command line reports them.
"""


class LpTensorError(Exception):
    """Base class for all errors raised by lptensor."""


class DimensionError(LpTensorError):
    """Shapes of tensors, matrices or vectors do not line up."""


class ModeError(LpTensorError):
    """A mode index is outside 0..order-1."""


class SymmetryError(LpTensorError):
    """An operation that needs a symmetric tensor got a nonsymmetric one."""


class ParameterError(LpTensorError):
    """A numeric parameter is outside its allowed range."""


class SingularPointError(LpTensorError):
    """Evaluation requested at a point where the map is not differentiable."""


class ZeroTensorError(LpTensorError):
    """Solvers reject the all-zero tensor."""


class DegenerateIterateError(LpTensorError):
    """An iterate produced an exactly zero update direction."""


class SizeLimitError(LpTensorError):
    """A brute-force routine was asked to exceed its enforced budget."""


class DomainError(LpTensorError):
    """Input values violate a sign or finiteness requirement."""


class ReducibleError(LpTensorError):
    """The Perron solver was given a reducible tensor without force=True."""

    def __init__(self, message, reducing_set=None):
        super().__init__(message)
        self.reducing_set = reducing_set


class PositivityWarning(UserWarning):
    """A computed Perron vector has entries indistinguishable from zero."""


class UniquenessWarning(UserWarning):
    """Restarts located more than one nonnegative eigenpair."""


class ConvergenceWarning(UserWarning):
    """A solver returned its best iterate without meeting the tolerance."""
