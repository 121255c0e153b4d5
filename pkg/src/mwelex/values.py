"""Tri-state feature values for lexicon-grammar tables.

A cell records one judgment about one expression under one criterion.
The three scalar states keep explicitly negative information (Minus)
apart from the mere absence of a judgment (Unknown); conflating the two
is the classic defect of positive-only lexicon formats.  Valued cells
carry literal text instead of a polarity: a selected preposition, the
part of speech of a predicate core, or a set of alternative causative
verbs.

Values are immutable; share them freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .diagnostics import LexiconError


class _State(Enum):
    PLUS = "+"
    MINUS = "-"
    UNKNOWN = "?"
    VALUED = "="


# Literal text may not contain layout characters, may not have leading or
# trailing whitespace, and may not contain "|" (the literal-set separator
# in the cell syntax; allowing it would make serialization ambiguous).
_FORBIDDEN = ("\t", "\n", "\r", "|")


def _check_text(text: str) -> None:
    if not isinstance(text, str) or not text:
        raise LexiconError("literal text must be a non-empty string")
    if text != text.strip():
        raise LexiconError(f"literal text has leading/trailing whitespace: {text!r}")
    for ch in _FORBIDDEN:
        if ch in text:
            raise LexiconError(f"literal text contains forbidden character {ch!r}: {text!r}")


@dataclass(frozen=True)
class FeatureValue:
    """One cell value: Plus, Minus, Unknown, or literal text.

    Use the module constants PLUS / MINUS / UNKNOWN and the factories
    literal() / literal_set() instead of constructing these directly.
    Alternative literals are kept sorted, so two cells naming the same
    alternatives compare equal however they were written.
    """

    state: _State
    texts: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.state is _State.VALUED:
            if not self.texts:
                raise LexiconError("valued cell needs at least one literal")
            for t in self.texts:
                _check_text(t)
            if len(set(self.texts)) != len(self.texts):
                raise LexiconError(f"literal set has duplicate members: {self.texts!r}")
            object.__setattr__(self, "texts", tuple(sorted(self.texts)))
        elif self.texts:
            raise ValueError("scalar cell cannot carry literal text")

    @property
    def is_plus(self) -> bool:
        return self.state is _State.PLUS

    @property
    def is_minus(self) -> bool:
        return self.state is _State.MINUS

    @property
    def is_unknown(self) -> bool:
        return self.state is _State.UNKNOWN

    @property
    def is_valued(self) -> bool:
        return self.state is _State.VALUED

    @property
    def is_literal(self) -> bool:
        return self.state is _State.VALUED and len(self.texts) == 1

    @property
    def is_literal_set(self) -> bool:
        return self.state is _State.VALUED and len(self.texts) >= 2

    @property
    def token(self) -> str:
        """Cell syntax for this value: "+", "-", "?", "=x" or "=a|b"."""
        if self.state is _State.VALUED:
            return "=" + "|".join(self.texts)
        return self.state.value

    def __repr__(self) -> str:  # compact in assertion diffs
        return f"FeatureValue({self.token!r})"

    def __str__(self) -> str:
        return self.token


PLUS = FeatureValue(_State.PLUS)
MINUS = FeatureValue(_State.MINUS)
UNKNOWN = FeatureValue(_State.UNKNOWN)


def literal(text: str) -> FeatureValue:
    return FeatureValue(_State.VALUED, (text,))


def literal_set(texts: Iterable[str]) -> FeatureValue:
    """A set of alternative literals (two or more, stored sorted)."""
    tup = tuple(texts)
    if len(tup) < 2:
        raise LexiconError("literal set needs at least two members")
    return FeatureValue(_State.VALUED, tup)


def parse_value_token(token: str) -> FeatureValue:
    """Decode a cell token. Raises LexiconError on anything malformed."""
    if token == "+":
        return PLUS
    if token == "-":
        return MINUS
    if token == "?":
        return UNKNOWN
    if token.startswith("="):
        parts = token[1:].split("|")
        if len(parts) == 1:
            return literal(parts[0])
        return literal_set(parts)
    raise LexiconError(f"not a cell value: {token!r}")


def kleene_and(values: Iterable[FeatureValue]) -> FeatureValue:
    """Conjunction over the three scalar states.

    Minus dominates (one failed conjunct sinks the conjunction), Unknown
    propagates otherwise, and the empty conjunction is Plus.  Literal
    values have no truth value and are rejected.
    """
    saw_unknown = False
    for v in values:
        if v.is_valued:
            raise ValueError(f"kleene_and over a literal value: {v!r}")
        if v.is_minus:
            return MINUS
        if v.is_unknown:
            saw_unknown = True
    return UNKNOWN if saw_unknown else PLUS
