"""Exception hierarchy.

Every error carries the process exit code the CLI reports for it, so the
mapping lives next to the classes instead of in a lookup table.
"""

from __future__ import annotations

from typing import Optional


class CoverForgeError(Exception):
    """Base class; anything not classified below is an internal failure."""

    exit_code: int = 4


class ParseError(CoverForgeError):
    """Malformed polynomial text or problem file."""

    exit_code = 1

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(self._render())

    def _render(self) -> str:
        if self.line is None and self.column is None:
            return self.message
        if self.line is None:
            return f"column {self.column}: {self.message}"
        if self.column is None:
            return f"line {self.line}: {self.message}"
        return f"line {self.line}, column {self.column}: {self.message}"


class PreconditionError(CoverForgeError):
    exit_code = 2


class ContextError(PreconditionError):
    """Operands live in different rings, or a variable has no home."""


class ShapeError(PreconditionError):
    pass


class DegreeError(PreconditionError):
    pass


class UnsupportedError(PreconditionError):
    """Input outside the graded setting an operation is defined for."""


class HypothesisViolation(PreconditionError):
    """A cover problem breaks the quadratic-generators / linear-syzygy hypotheses."""


class RegressionMismatch(CoverForgeError):
    """A recomputed catalog artifact differs from its expected value."""

    exit_code = 3

    def __init__(self, entry: str, detail: str):
        self.entry = entry
        self.detail = detail
        super().__init__(f"{entry}: {detail}")


class InternalContradiction(CoverForgeError):
    """A certificate that must hold for valid input failed."""

    exit_code = 4
