"""Exception hierarchy shared by all modules.

The CLI maps these to exit codes: domain errors -> 1, numeric failures -> 2,
verification failures -> 3.
"""


class DomainError(ValueError):
    """Argument outside the documented domain of an operation."""


class ConvergenceError(ArithmeticError):
    """An iterative or adaptive method failed to reach its tolerance."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class FunctionalOverflowError(OverflowError):
    """The exponential integrand left double-precision range."""

    def __init__(self, radius, exponent):
        super().__init__(
            f"exp({exponent:.6g}) overflows at radius r={radius:.6g}"
        )
        self.radius = radius
        self.exponent = exponent


class VerificationError(AssertionError):
    """Two independent computational routes disagree beyond tolerance."""
