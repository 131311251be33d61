"""Exception hierarchy shared by the services, the CLI and the HTTP layer.

Every class carries the CLI exit code it maps to (`exit_code`); the routers map
the same classes onto HTTP statuses.
"""
from __future__ import annotations


class BiorderError(Exception):
    exit_code = 1


class ParseError(BiorderError, ValueError):
    """Input text does not follow the word or matrix grammar."""

    exit_code = 2

    def __init__(self, message: str, *, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnknownGeneratorError(BiorderError, ValueError):
    exit_code = 2


class TruncationMismatchError(BiorderError, ValueError):
    pass


class NonUnitError(BiorderError, ValueError):
    pass


class PreconditionError(BiorderError, ValueError):
    exit_code = 3


class UncertifiedError(PreconditionError):
    """The requested order is not certified for this group (e.g. a rejected monodromy)."""


class MonodromyError(PreconditionError):
    pass


class NonCommutatorError(PreconditionError):
    pass


class ExtensionContractError(BiorderError):
    """An ExtensionSpec's kernel cast was undefined on an element of the kernel."""


class MagnusTerminationError(BiorderError, AssertionError):
    """No nonzero lowest term by the letter-length bound; contradicts Magnus injectivity."""


__all__ = [
    "BiorderError",
    "ParseError",
    "UnknownGeneratorError",
    "TruncationMismatchError",
    "NonUnitError",
    "PreconditionError",
    "UncertifiedError",
    "MonodromyError",
    "NonCommutatorError",
    "ExtensionContractError",
    "MagnusTerminationError",
]
