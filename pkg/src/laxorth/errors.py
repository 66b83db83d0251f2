"""Exception hierarchy shared by every module."""
from __future__ import annotations


class LaxorthError(Exception):
    """Base class for all errors raised by the library."""


class CategoryError(LaxorthError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ParseError(CategoryError):
    pass


class DuplicateId(CategoryError):
    pass


class UnknownId(CategoryError):
    pass


class MissingComposite(CategoryError):
    pass


class BadComposite(CategoryError):
    pass


class NonAssociative(CategoryError):
    pass


class BadIdentity(CategoryError):
    pass


class NotAFunctor(CategoryError):
    pass


class NotNatural(CategoryError):
    pass


class TargetMismatch(LaxorthError, ValueError):
    pass


class ShapeMismatch(LaxorthError, ValueError):
    pass


class NameCollision(LaxorthError, ValueError):
    pass


class SizeLimitExceeded(LaxorthError, RuntimeError):
    pass


class NotAPullback(LaxorthError, ValueError):
    pass


class WitnessNotFound(LaxorthError, RuntimeError):
    pass


class CoalgebraInvalid(LaxorthError, ValueError):
    pass


class AlgebraInvalid(LaxorthError, ValueError):
    pass


class BundleInvalid(LaxorthError, ValueError):
    pass


class NotARetraction(LaxorthError, ValueError):
    pass


class NotSimple(LaxorthError, ValueError):
    pass


class MissingPullback(LaxorthError, ValueError):
    pass
