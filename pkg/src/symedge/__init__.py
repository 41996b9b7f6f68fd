"""Exact Ehrhart data and certified roots for symmetric edge polytopes of cycles."""

__version__ = "0.1.0"

from symedge.errors import DomainError, EscalationError, ResourceLimitError

__all__ = ["DomainError", "EscalationError", "ResourceLimitError", "__version__"]
