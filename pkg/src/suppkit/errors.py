"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class SuppkitError(Exception):
    """Base class for all engine errors."""


class UnsupportedRing(SuppkitError):
    pass


class NotAComplex(SuppkitError):
    pass


class RingMismatch(SuppkitError):
    pass


class NotMonomial(SuppkitError):
    pass


class NotCertifiable(SuppkitError):
    pass


class NotMaximal(SuppkitError):
    pass


class NotTabulated(SuppkitError):
    pass


class AmbientMismatch(SuppkitError):
    pass


class IncompleteAmbient(SuppkitError):
    pass


class UnsupportedIdeal(SuppkitError):
    pass


class PreconditionFailed(SuppkitError):
    pass


class ConditionDisagreement(SuppkitError):
    """Conditions that a theorem declares equivalent came out different.

    This always indicates an engine bug (or a theorem applied outside its
    hypotheses); the CLI maps it to its own exit code.
    """


class SessionSyntaxError(SuppkitError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class SemanticError(SuppkitError):
    pass
