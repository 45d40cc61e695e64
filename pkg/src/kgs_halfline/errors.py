"""Exception types raised across the package."""


class KGSError(Exception):
    """Base class for package errors."""


class ConfigurationError(KGSError, ValueError):
    """Invalid grid, config or problem parameters."""


class NumericError(KGSError, ArithmeticError):
    """Non-finite values where finite ones are required."""


class ValidationError(KGSError, ValueError):
    """Input violates a documented precondition (e.g. complex wave data)."""


class ConvergenceError(KGSError, RuntimeError):
    """Picard iteration failed to converge; carries the residual log."""

    def __init__(self, message, residuals=None, partial=None):
        super().__init__(message)
        self.residuals = list(residuals or [])
        self.partial = partial


class InstabilityError(KGSError, RuntimeError):
    """A reference scheme blew up."""
