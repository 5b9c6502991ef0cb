"""Exception types shared across the package.

The CLI maps each class to a fixed exit code, so library callers and
scripts see the same failure taxonomy.
"""


class CircleMethodError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class ValidationError(CircleMethodError, ValueError):
    """An argument violates an operation's precondition."""

    exit_code = 2


class ParameterInfeasibleError(ValidationError):
    """Circle parameters give overlapping major arcs (2Q^2 > tau)."""

    exit_code = 3

    def __init__(self, Q, tau, message=None):
        self.Q = Q
        self.tau = tau
        super().__init__(
            message
            or f"major arcs overlap: 2*Q^2 = {2 * Q * Q:.6g} exceeds tau = {tau:.6g} (Q={Q:.6g})"
        )


class CapacityError(CircleMethodError, MemoryError):
    """A requested array exceeds the configured memory budget."""

    exit_code = 4


class AliasingError(ValidationError):
    """DFT grid too small to resolve every exponent without wraparound."""


class OutOfTheoremRange(ValidationError):
    """Inputs fall outside the hypotheses of the estimate being measured."""
