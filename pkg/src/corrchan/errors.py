"""Exception types shared across the package."""


class ValidationError(ValueError):
    """An input violated a structural invariant (hermiticity, trace, positivity).

    Carries the name of the violated invariant and the numeric residual so
    callers can report exactly what went wrong.
    """

    def __init__(self, invariant: str, residual: float, message: str | None = None):
        self.invariant = invariant
        self.residual = residual
        super().__init__(message or f"{invariant} violated (residual {residual:.3e})")


class NumericError(RuntimeError):
    """A numerical procedure failed (singular matrix, imaginary residue, divergence)."""
