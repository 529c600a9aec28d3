"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the domain of an operation.

    ``check`` names the violated precondition when one is meaningful.
    """

    def __init__(self, message, check=None):
        super().__init__(message)
        self.check = check


class ResourceError(RuntimeError):
    """A computation would exceed its enumeration or size budget."""


class UnfactoredError(ArithmeticError):
    """An integer could not be factored far enough to certify a result."""


class InternalError(AssertionError):
    """A mathematical invariant failed; indicates a bug, not bad input."""
