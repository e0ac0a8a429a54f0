"""Exceptions shared across the package."""


class DomainError(ValueError):
    """An argument lies outside an operation's documented domain."""


class InfeasibleError(RuntimeError):
    """A request was refused because it exceeds a stated work ceiling.

    Carries enough context to tell the caller what was needed versus what
    was allowed, so the CLI can print an actionable refusal instead of
    silently burning CPU.
    """

    def __init__(self, message: str, required=None, ceiling=None):
        super().__init__(message)
        self.required = required
        self.ceiling = ceiling
