"""
Exception hierarchy shared by the engine and the program runner.
"""

from typing import Optional


class CoherenceError(Exception):
    """Base class for every engine failure."""


class EventAlgebraError(CoherenceError, ValueError):
    """Bad event, unassigned atom, impossible antecedent or atom cap."""


class LinearProgramError(CoherenceError, ValueError):
    """Malformed linear program (dimension mismatch, no constraints)."""


class AssessmentError(CoherenceError, ValueError):
    """Assessment misaligned with its family, out of range, or not g-coherent."""


class KnowledgeBaseError(CoherenceError):
    """Knowledge base cannot support the requested query."""


class ProgramSyntaxError(CoherenceError):
    """Parse error carrying a 1-based line and column."""

    def __init__(self, message: str, line: int, column: int, source: Optional[str] = None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        super().__init__(f"line {line}, column {column}: {message}")
