"""Exception types shared across the package.

Every error raised on purpose derives from AnalogiaError, so callers
(notably the command line driver) can catch one type and report the
message without losing unexpected bugs to a blanket except clause.
"""

from __future__ import annotations


class AnalogiaError(Exception):
    """Base class for all deliberate rejections."""


class SignatureError(AnalogiaError):
    """Malformed signature: bad identifier, duplicate symbol, bad arity."""


class DomainError(AnalogiaError):
    """Malformed knowledge domain: bad interpretation or fact table."""


class FormulaError(AnalogiaError):
    """Formula fails the well-formedness check against a signature."""


class ParseError(AnalogiaError):
    """Syntax error with a 1-based source position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col
        self.bare_message = message


class TranslationError(AnalogiaError):
    """A formula cannot be carried over by an analogy map."""


class NoGuardMatch(TranslationError):
    """No piece of a piecewise map covers the formula's constants."""


class UntranslatableSymbol(TranslationError):
    """A symbol of the formula is missing from the matched piece."""

    def __init__(self, symbol: str):
        super().__init__(f"symbol {symbol!r} is not mapped")
        self.symbol = symbol


class AnalogyError(AnalogiaError):
    """Malformed analogy map, combination, or score request."""


class PreferenceError(AnalogiaError):
    """Malformed preference relation or choice-function request."""


class EntailmentError(AnalogiaError):
    """Malformed analogy space."""


class RepcheckError(AnalogiaError):
    """A representation sweep was misconfigured or found an internal
    incoherence (for example a property-violating choice function that a
    relation nonetheless represents)."""


class SessionError(AnalogiaError):
    """A session file parsed but fails semantic validation."""
