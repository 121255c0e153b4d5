"""Errors and validation findings shared across the package.

Malformed input raises (files the tool cannot read are not data); rule
violations inside well-formed data are returned as Violation records so
callers can report them without losing the rest of the table.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class LexiconError(Exception):
    """Base class for everything this package raises on bad input."""


class TableFormatError(LexiconError):
    def __init__(self, message: str, *, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PatternError(LexiconError):
    """The pattern DSL string does not parse."""


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Violation:
    severity: Severity
    code: str
    message: str
    entry_id: str | None = None
    feature: str | None = None
    rule_id: str | None = None

    def render(self) -> str:
        """One tab-separated report line."""
        return "\t".join(
            [
                self.severity.value,
                self.code if self.rule_id is None else f"{self.code}:{self.rule_id}",
                self.entry_id or "-",
                self.feature or "-",
                self.message,
            ]
        )
