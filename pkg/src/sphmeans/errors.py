"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class SingularSurfaceError(ValueError):
    """Evaluation requested exactly on t = |x - z| or t = x + z.

    Kernel values on these surfaces are anomalous (they do not match the
    limits from either side) and are deliberately refused.
    """


class ConvergenceError(RuntimeError):
    """A quadrature failed to reach its tolerance within budget."""

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class DivergenceError(ArithmeticError):
    """An integral provably diverges for the given parameters."""


class ExcludedParameterError(ValueError):
    """Parameters fall on an excluded line (e.g. alpha + beta = -1/2)."""
