"""Exception types raised by the engine.

Every error carries a short machine-readable ``code`` so the CLI can report
it without parsing messages.
"""

from __future__ import annotations


class CycleError(ValueError):
    code = "CYCLE_ERROR"

    def __init__(self, message: str = "", **context):
        self.context = context
        super().__init__(f"{self.code}: {message}" if message else self.code)


class AmbientMismatch(CycleError):
    code = "AMBIENT_MISMATCH"


class IndexOutOfRange(CycleError):
    code = "INDEX_OUT_OF_RANGE"


class NonInjectiveMap(CycleError):
    code = "NON_INJECTIVE_MAP"


class NotZeroDimensional(CycleError):
    code = "NOT_ZERO_DIMENSIONAL"


class ArityMismatch(CycleError):
    code = "ARITY_MISMATCH"


class ArityTooSmall(CycleError):
    code = "ARITY_TOO_SMALL"


class GenusMismatch(CycleError):
    code = "GENUS_MISMATCH"


class GenusTooSmall(CycleError):
    code = "GENUS_TOO_SMALL"


class UnsupportedDecoration(CycleError):
    code = "UNSUPPORTED_DECORATION"


class InvalidGenus(CycleError):
    code = "INVALID_GENUS"


class FactNotDerived(CycleError):
    code = "FACT_NOT_DERIVED"


class SyntaxError_(CycleError):
    """Parse failure; ``position`` is the 0-based character offset."""

    code = "SYNTAX_ERROR"

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at position {position}", position=position)


class AmbientAmbiguous(CycleError):
    code = "AMBIENT_AMBIGUOUS"
