"""Exception types shared across the package."""


class SpinZeroError(Exception):
    """Base class for all package-specific errors."""


class GraphError(SpinZeroError, ValueError):
    """Invalid graph construction input (self-loop, duplicate edge, bad index)."""


class SingularPruneError(SpinZeroError, ArithmeticError):
    """A leaf field hit -beta during pruning, making the prune factor zero."""


class BudgetError(SpinZeroError, RuntimeError):
    """An enumeration or iteration budget was exceeded."""


class RootFindingError(SpinZeroError, RuntimeError):
    """Root iteration failed to meet the residual contract.

    Carries the best iterate found and its residual for diagnosis.
    """

    def __init__(self, message, best=None, residual=None):
        super().__init__(message)
        self.best = best
        self.residual = residual


class DomainError(SpinZeroError, ValueError):
    """An angle or point outside the domain of a boundary parametrization."""


class InfeasibleError(SpinZeroError, RuntimeError):
    """The product-minimization program has an empty feasible set."""


class RegimeError(SpinZeroError, ValueError):
    """Parameters or fields outside the regime the algorithm supports."""
