"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class GerstError(Exception):
    """Base class for all errors raised by gerst."""


# lattice layer
class DimensionMismatch(GerstError, ValueError):
    pass


class NotDownwardClosed(GerstError, ValueError):
    pass


class NotAntichain(GerstError, ValueError):
    pass


class InfiniteQuotient(GerstError, ValueError):
    pass


class BoxLimitExceeded(GerstError, OverflowError):
    pass


class NotNested(GerstError, ValueError):
    pass


class NotSkew(GerstError, ValueError):
    pass


class EmptyShape(GerstError, ValueError):
    pass


class NotAntitone(GerstError, ValueError):
    pass


class NonTransitiveJoinability(GerstError):
    """A connected class contains two boxes with no common upper bound in the shape."""

    def __init__(self, message: str, witness: tuple) -> None:
        super().__init__(message)
        self.witness = witness


# gluing / matrices
class InvalidGluing(GerstError, ValueError):
    def __init__(self, message: str, violations: list | None = None) -> None:
        super().__init__(message)
        self.violations = violations or []


class NotCommuting(GerstError, ValueError):
    pass


class SizeMismatch(GerstError, ValueError):
    pass


class InconsistencyDetected(GerstError):
    pass


# towers / floor plans
class InvalidTower(GerstError, ValueError):
    def __init__(self, message: str, violations: list | None = None) -> None:
        super().__init__(message)
        self.violations = violations or []


class NotScaffolded(GerstError, ValueError):
    pass


class PreconditionFailed(GerstError):
    def __init__(self, message: str, blocking: object = None) -> None:
        super().__init__(message)
        self.blocking = blocking


class NoOverlap(GerstError):
    pass


class ObligationFailed(GerstError):
    """A descent step broke one of its checked obligations.

    ``step`` is the offending step and ``trace`` the steps accepted before it.
    """

    def __init__(self, message: str, step=None, trace=None) -> None:
        super().__init__(message)
        self.step = step
        self.trace = trace


# harness
class ParseError(GerstError, ValueError):
    def __init__(self, message: str, field: str | None = None, line: int | None = None) -> None:
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field:
            where.append(f"field {field}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.field = field
        self.line = line


class GenerationFailed(GerstError):
    pass


class AnomalyFound(GerstError):
    def __init__(self, message: str, record: dict | None = None) -> None:
        super().__init__(message)
        self.record = record


class UnsupportedKind(GerstError, ValueError):
    pass
