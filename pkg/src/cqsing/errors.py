"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Raised when user-supplied data violates a documented precondition."""


class VerificationError(RuntimeError):
    """A redundant computation route disagreed with the primary one.

    Every headline quantity in this package is computed twice, by
    independent routes.  This exception signals a mathematical bug, not a
    usage error, and maps to exit code 2 on the command line.
    """


class InfiniteQuotientError(ArithmeticError):
    """A module quotient turned out to be infinite dimensional."""
