"""Exception types shared across the package.

The frontend maps these onto process exit codes: hypothesis violations
exit 2, exhausted budgets exit 3, parse errors exit 4.
"""
from __future__ import annotations


class TransdiscError(Exception):
    """Base class for all package errors."""


class ParseError(TransdiscError):
    """Malformed polynomial text or job file.

    ``position`` is a 0-based character offset into the offending text
    (or ``None`` when the error is not tied to a single character).
    """

    def __init__(self, message: str, position: int | None = None, text: str | None = None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class BudgetExhausted(TransdiscError):
    """A Groebner computation exceeded its pair or degree budget."""

    def __init__(self, message: str, pairs: int = 0, degree: int = 0):
        self.pairs = pairs
        self.degree = degree
        super().__init__(message)


class HypothesisError(TransdiscError):
    """A mathematical precondition of an operation does not hold.

    ``hypothesis`` names the violated condition, e.g. ``"s.c.i."`` or
    ``"generically ordinary"``.
    """

    def __init__(self, hypothesis: str, message: str, witness=None):
        self.hypothesis = hypothesis
        self.witness = witness
        super().__init__(f"[{hypothesis}] {message}")


class NotFiniteError(HypothesisError):
    """A quotient algebra expected to be finite dimensional is not."""

    def __init__(self, message: str, witness=None):
        super().__init__("finite", message, witness)
