"""Symbol entries and scopes."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Iterator

from .diagnostics import NO_SPAN, Span

# Entry kinds are opaque strings chosen by the language modules.
EntryKind = str


class Visibility(enum.Enum):
    EXPORTED = "EXPORTED"
    INTERNAL = "INTERNAL"


@dataclass(eq=False)
class SymbolEntry:
    """Description of one model element.  Compared by identity."""

    name: str
    kind: EntryKind
    visibility: Visibility = Visibility.EXPORTED
    span: Span = NO_SPAN
    unit: str = ""
    payload: dict[str, Any] = field(default_factory=dict)
    adapted_from: "SymbolEntry | None" = None
    # scope the entry was defined in; None for adapted entries
    scope: "Scope | None" = None
    # nested scope owned by this entry (component body, class body, ...)
    members: "Scope | None" = None

    @property
    def exported(self) -> bool:
        return self.visibility is Visibility.EXPORTED

    def __repr__(self) -> str:
        src = f" <- {self.adapted_from.kind}" if self.adapted_from else ""
        return f"<{self.kind} {self.unit}:{self.name}{src}>"


class Scope:
    def __init__(self, parent: "Scope | None" = None, owner: SymbolEntry | None = None,
                 unit: str = "", imports: list[str] | None = None):
        self.parent = parent
        self.owner = owner
        self.unit = unit if parent is None else parent.unit
        self.imports: list[str] = list(imports or [])
        self._entries: dict[str, list[SymbolEntry]] = {}
        self.children: list[Scope] = []
        if parent is not None:
            parent.children.append(self)
        if owner is not None:
            owner.members = self

    def add(self, entry: SymbolEntry) -> SymbolEntry | None:
        """Add ``entry``; return the clashing entry instead if (name, kind) exists."""
        bucket = self._entries.setdefault(entry.name, [])
        for other in bucket:
            if other.kind == entry.kind:
                return other
        bucket.append(entry)
        entry.scope = self
        entry.unit = self.unit
        return None

    def lookup(self, name: str) -> list[SymbolEntry]:
        return list(self._entries.get(name, ()))

    def local(self, name: str, kind: EntryKind) -> SymbolEntry | None:
        for e in self._entries.get(name, ()):
            if e.kind == kind:
                return e
        return None

    def entries(self) -> Iterator[SymbolEntry]:
        for bucket in self._entries.values():
            yield from bucket

    def enclosing(self) -> Iterator["Scope"]:
        s: Scope | None = self
        while s is not None:
            yield s
            s = s.parent

    def walk(self) -> Iterator["Scope"]:
        yield self
        for c in self.children:
            yield from c.walk()

    @property
    def root(self) -> "Scope":
        s = self
        while s.parent is not None:
            s = s.parent
        return s

    def __repr__(self) -> str:
        owner = self.owner.name if self.owner else "<root>"
        return f"<Scope {self.unit}:{owner}>"
