"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class ResourceLimitError(RuntimeError):
    """A brute-force computation was asked to run beyond its size guard."""


class EscalationError(RuntimeError):
    """Root certification did not succeed below the precision ceiling."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
