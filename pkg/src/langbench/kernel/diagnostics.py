"""Diagnostics, source spans and the process-wide error-code registry."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field

CODE_PATTERN = re.compile(r"^[A-Z]{2,3}[0-9]{4}$")

# code -> one-line description; filled by each language module at import time
CODES: dict[str, str] = {}


class Severity(enum.Enum):
    ERROR = "ERROR"
    WARNING = "WARNING"


@dataclass(frozen=True, order=True)
class Span:
    file: str
    line: int
    column: int
    end_line: int = 0
    end_column: int = 0

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


NO_SPAN = Span("<unknown>", 0, 0)


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    code: str
    span: Span
    message: str = field(default="")

    def __post_init__(self):
        if not CODE_PATTERN.match(self.code):
            raise ValueError(f"malformed diagnostic code {self.code!r}")

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def sort_key(self):
        return (self.span.file, self.span.line, self.span.column, self.code,
                self.message)

    def format(self) -> str:
        return f"{self.severity.value} {self.code} {self.span} {self.message}"


def error(code: str, span: Span, message: str) -> Diagnostic:
    return Diagnostic(Severity.ERROR, code, span, message)


def warning(code: str, span: Span, message: str) -> Diagnostic:
    return Diagnostic(Severity.WARNING, code, span, message)


def register_codes(codes: dict[str, str]) -> None:
    for code, text in codes.items():
        if not CODE_PATTERN.match(code):
            raise ValueError(f"malformed diagnostic code {code!r}")
        known = CODES.get(code)
        if known is not None and known != text:
            raise ValueError(f"diagnostic code {code} registered twice")
        CODES[code] = text


def sort_diagnostics(diags) -> list[Diagnostic]:
    return sorted(diags, key=Diagnostic.sort_key)


def has_errors(diags) -> bool:
    return any(d.is_error for d in diags)


class ConfigurationError(Exception):
    """Raised when languages or adapters are registered inconsistently."""


class EvaluationFailure(Exception):
    """Base for runtime failures while evaluating an embedded expression."""


register_codes({
    "KRN0001": "file with unregistered extension skipped (warning)",
    "KRN0002": "model file could not be read",
    "KRN0003": "qualified model name defined in more than one place",
})
