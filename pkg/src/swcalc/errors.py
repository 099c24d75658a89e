"""Exception types shared across the package."""


class SwcalcError(Exception):
    """Base class for all calculator errors."""


class AmbientMismatchError(SwcalcError):
    """Raised when group-ring operands live in different ambient groups."""


class UnsupportedOperation(SwcalcError):
    """Raised when an operation is outside the supported fragment."""


class GuardViolation(SwcalcError):
    """A construction hypothesis does not hold.

    ``requirement`` names the violated hypothesis so reports can cite it.
    """

    def __init__(self, message: str, requirement: str | None = None):
        super().__init__(message)
        self.requirement = requirement


class ExprSyntaxError(SwcalcError):
    """Syntax error in the expression language, with source position."""

    def __init__(self, message: str, position: int | None = None,
                 suggestions: tuple[str, ...] = ()):
        super().__init__(message)
        self.position = position
        self.suggestions = tuple(suggestions)
