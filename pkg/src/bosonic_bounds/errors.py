"""Exception types shared across the package."""


class BosonicBoundsError(Exception):
    """Base class for all package-specific errors."""


class DomainError(BosonicBoundsError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class InvalidStateError(BosonicBoundsError, ValueError):
    """A covariance matrix or mean vector does not describe a physical state."""


class InvalidChannelError(BosonicBoundsError, ValueError):
    """An (X, Y) pair violates the complete-positivity condition."""


class ChannelKindError(BosonicBoundsError, TypeError):
    """A channel of the wrong kind was passed to a kind-specific operation."""


class InfeasibleBoundError(BosonicBoundsError, RuntimeError):
    """The requested bound does not apply in this parameter regime.

    Raised instead of returning 0, since 0 is a meaningful capacity value.
    The message names the violated condition.
    """


class SingularMatrixError(BosonicBoundsError, ArithmeticError):
    """An intermediate matrix quantity was singular or non-finite."""
