"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input violates an operation's precondition."""


class OrderingError(DomainError):
    """Arguments were passed in the wrong order (e.g. swap H and L)."""


class ResourceError(RuntimeError):
    """A configured size cap or budget was exceeded."""

    def __init__(self, message: str, cap: str | None = None, value=None):
        super().__init__(message)
        self.cap = cap
        self.value = value


class FalsificationError(AssertionError):
    """A structural assertion that a proof guarantees turned out false.

    Raised instead of silently repairing, so that any occurrence surfaces
    as a test failure.
    """
