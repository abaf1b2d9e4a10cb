from __future__ import annotations

from typing import List, Optional, Sequence


class SliceCalcError(Exception):
    """Base class for every error raised by slicecalc."""


class InvalidSpecError(SliceCalcError):
    """
    Input that cannot be evaluated: a malformed representation, a non-prime p,
    an index out of range. The CLI maps it to exit code 2.
    """

    def __init__(self, message: str, path: Optional[str] = None) -> None:
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class IllDefinedMapError(InvalidSpecError):
    """A matrix that does not send relations of the source into relations of the target."""


class InvalidMackeyError(InvalidSpecError):
    """Mackey data that fails validation when a functor is applied to it."""

    def __init__(self, violations: Sequence[object]) -> None:
        self.violations: List[object] = list(violations)
        lines = "; ".join(str(v) for v in self.violations)
        super().__init__(f"invalid Mackey functor: {lines}")


class InvariantViolation(SliceCalcError):
    """An internal consistency check failed. The CLI maps it to exit code 3."""
