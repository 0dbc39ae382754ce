"""Language registry, model loading, name resolution and the workflow engine."""

from __future__ import annotations

import enum
import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Iterable, Sequence

from .diagnostics import (ConfigurationError, Diagnostic, Span, error,
                          has_errors, sort_diagnostics, warning)
from .symbols import EntryKind, Scope, SymbolEntry

log = logging.getLogger(__name__)


class Phase(enum.IntEnum):
    DEFINE = 0
    RESOLVE = 1
    CHECK = 2
    GENERATE = 3


class _Outcome:
    def __init__(self, name: str):
        self.name = name

    def __repr__(self) -> str:
        return self.name

    def __bool__(self) -> bool:
        return False


NOT_FOUND = _Outcome("NOT_FOUND")
AMBIGUOUS = _Outcome("AMBIGUOUS")


@dataclass
class Workflow:
    name: str
    phase: Phase
    run: Callable[["ModelUnit", "Workbench"], list[Diagnostic]]


ParseFn = Callable[[str, str], "tuple[Any, list[Diagnostic]]"]


@dataclass
class LanguageDescriptor:
    language_id: str
    file_extension: str
    parse: ParseFn
    workflows: list[Workflow] = field(default_factory=list)


@dataclass(frozen=True)
class AdapterRegistration:
    from_kind: EntryKind
    to_kind: EntryKind
    adapt: Callable[[SymbolEntry], SymbolEntry]


@dataclass(eq=False)
class ModelUnit:
    language_id: str
    qualified_name: str
    ast: Any
    root_scope: Scope
    path: str

    @property
    def package(self) -> str:
        return self.qualified_name.rpartition(".")[0]

    @property
    def simple_name(self) -> str:
        return self.qualified_name.rpartition(".")[2]


class Workbench:
    """Registry of languages, adapters and loaded model units.

    Also serves as the resolution context handed to every workflow.
    """

    def __init__(self):
        self.languages: dict[str, LanguageDescriptor] = {}
        self.by_extension: dict[str, LanguageDescriptor] = {}
        self.adapters: dict[tuple[str, str], AdapterRegistration] = {}
        self.units: dict[str, ModelUnit] = {}
        self._adapted: dict[tuple[SymbolEntry, str], SymbolEntry] = {}
        self._lock = threading.RLock()

    # -- configuration -------------------------------------------------

    def register_language(self, descriptor: LanguageDescriptor) -> None:
        if descriptor.language_id in self.languages:
            raise ConfigurationError(f"language '{descriptor.language_id}' already registered")
        if descriptor.file_extension in self.by_extension:
            raise ConfigurationError(f"extension '{descriptor.file_extension}' already registered")
        self.languages[descriptor.language_id] = descriptor
        self.by_extension[descriptor.file_extension] = descriptor

    def register_adapter(self, reg: AdapterRegistration) -> None:
        key = (reg.from_kind, reg.to_kind)
        if key in self.adapters:
            raise ConfigurationError(f"adapter {reg.from_kind}->{reg.to_kind} already registered")
        self.adapters[key] = reg

    # -- loading -------------------------------------------------------

    def load_models(self, modelpath: Sequence[str | Path], jobs: int = 1) -> list[Diagnostic]:
        diags: list[Diagnostic] = []
        work = []
        for root in modelpath:
            root = Path(root)
            for path in sorted(p for p in root.rglob("*") if p.is_file()):
                rel = path.relative_to(root)
                if any(part.startswith(".") for part in rel.parts):
                    continue
                desc = self.by_extension.get(path.suffix)
                if desc is None:
                    diags.append(warning("KRN0001", Span(str(path), 1, 1),
                                         f"no language registered for '{path.suffix or path.name}'; file skipped"))
                    continue
                work.append((root, rel, path, desc))

        def parse_one(item):
            root, rel, path, desc = item
            try:
                text = path.read_text(encoding="utf-8")
            except (OSError, UnicodeDecodeError) as exc:
                return None, [error("KRN0002", Span(str(path), 1, 1), f"cannot read file: {exc}")]
            return desc.parse(text, str(path))

        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(parse_one, work))
        else:
            results = [parse_one(item) for item in work]

        for (root, rel, path, desc), (ast, parse_diags) in zip(work, results):
            diags.extend(parse_diags)
            if ast is None:
                continue
            package = ".".join(rel.parent.parts)
            name = getattr(ast, "name", None) or path.stem
            qname = f"{package}.{name}" if package else name
            if qname in self.units:
                first = self.units[qname].path
                diags.append(error("KRN0003", Span(str(path), 1, 1),
                                   f"model '{qname}' already defined by {first}"))
                continue
            self.units[qname] = ModelUnit(desc.language_id, qname, ast,
                                          Scope(unit=qname), str(path))
        log.debug("loaded %d units", len(self.units))
        return diags

    # -- phases --------------------------------------------------------

    def run_phase(self, phase: Phase) -> list[Diagnostic]:
        diags: list[Diagnostic] = []
        for qname in sorted(self.units):
            unit = self.units[qname]
            for wf in self.languages[unit.language_id].workflows:
                if wf.phase is phase:
                    diags.extend(wf.run(unit, self))
        return diags

    def process(self, modelpath: Sequence[str | Path],
                until: Phase = Phase.CHECK) -> list[Diagnostic]:
        """Load and run phases in order, stopping after the first one with errors."""
        diags = self.load_models(modelpath)
        if not has_errors(diags):
            for phase in Phase:
                if phase > until:
                    break
                diags.extend(self.run_phase(phase))
                if has_errors(diags):
                    break
        return sort_diagnostics(diags)

    # -- resolution ----------------------------------------------------

    def resolve(self, name: str, expected: EntryKind | None, scope: Scope):
        """Resolve ``name`` from ``scope``.

        Returns a SymbolEntry, ``NOT_FOUND`` or ``AMBIGUOUS``.  ``expected``
        None accepts any kind (navigation).
        """
        # (1) lexical scopes of the same unit, innermost first
        for s in scope.enclosing():
            hit = self._select(s.lookup(name), expected, exported_only=False)
            if hit is not None:
                return hit
        # (2) imported units
        candidates = []
        for unit in self._imported_units(scope):
            candidates.extend(unit.root_scope.lookup(name))
        hit = self._select(candidates, expected, exported_only=True)
        if hit is not None:
            return hit
        if "." in name:
            head, _, tail = name.partition(".")
            owner = self.resolve(head, None, scope)
            if isinstance(owner, SymbolEntry) and owner.members is not None:
                hit = self.resolve_member(owner, tail, expected, scope)
                if hit is not NOT_FOUND:
                    return hit
            elif owner is AMBIGUOUS:
                return AMBIGUOUS
        # (3) global registry by qualified name
        return self._resolve_qualified(name, expected, scope)

    def resolve_member(self, owner: SymbolEntry, name: str, expected: EntryKind | None,
                       scope: Scope):
        """Resolve ``name`` inside the members of ``owner``, honouring visibility."""
        members = owner.members
        if members is None:
            return NOT_FOUND
        foreign = members.unit != scope.unit
        hit = self._select(members.lookup(name), expected, exported_only=foreign)
        if hit is not None:
            return hit
        if "." in name:
            head, _, tail = name.partition(".")
            inner = self._select(members.lookup(head), None, exported_only=foreign)
            if isinstance(inner, SymbolEntry):
                return self.resolve_member(inner, tail, expected, scope)
            if inner is AMBIGUOUS:
                return AMBIGUOUS
        return NOT_FOUND

    def resolve_global(self, name: str, expected: EntryKind | None):
        """Resolve a fully qualified name from outside every unit (exported entries only)."""
        return self._resolve_qualified(name, expected, Scope(unit="<global>"))

    def _resolve_qualified(self, name: str, expected, scope: Scope):
        parts = name.split(".")
        for k in range(len(parts), 0, -1):
            unit = self.units.get(".".join(parts[:k]))
            if unit is None:
                continue
            foreign = unit.qualified_name != scope.unit
            rest = parts[k:]
            local = ".".join(rest) if rest else parts[k - 1]
            hit = self._select(unit.root_scope.lookup(local), expected, exported_only=foreign)
            if hit is not None:
                return hit
            if len(rest) > 1:
                owner = self._select(unit.root_scope.lookup(rest[0]), None, exported_only=foreign)
                if isinstance(owner, SymbolEntry):
                    hit = self.resolve_member(owner, ".".join(rest[1:]), expected, scope)
                    if hit is not NOT_FOUND:
                        return hit
            if rest:
                # the unit name also stands for its eponymous top-level entry
                owner = self._select(unit.root_scope.lookup(unit.simple_name), None,
                                     exported_only=foreign)
                if isinstance(owner, SymbolEntry):
                    return self.resolve_member(owner, ".".join(rest), expected, scope)
        return NOT_FOUND

    def _imported_units(self, scope: Scope) -> Iterable[ModelUnit]:
        here = self.units.get(scope.unit)
        package = here.package if here is not None else scope.unit.rpartition(".")[0]
        seen = set()
        for imp in scope.root.imports:
            if imp.endswith(".*"):
                pkg = imp[:-2]
                names = [q for q in sorted(self.units) if q.rpartition(".")[0] == pkg]
            else:
                names = [imp]
            for q in names:
                if q in self.units and q not in seen:
                    seen.add(q)
        for q in sorted(self.units):
            if q.rpartition(".")[0] == package:
                seen.add(q)
        seen.discard(scope.unit)
        return [self.units[q] for q in sorted(seen)]

    def _select(self, candidates: list[SymbolEntry], expected, exported_only: bool):
        if exported_only:
            candidates = [c for c in candidates if c.exported]
        if not candidates:
            return None
        direct = [c for c in candidates if expected is None or c.kind == expected]
        if len(direct) == 1:
            return direct[0]
        if direct:
            return AMBIGUOUS
        adaptable = [c for c in candidates if (c.kind, expected) in self.adapters]
        if len(adaptable) == 1:
            return self.adapt(adaptable[0], expected)
        if adaptable:
            return AMBIGUOUS
        return None

    def adapt(self, entry: SymbolEntry, expected: EntryKind) -> SymbolEntry:
        key = (entry, expected)
        with self._lock:
            cached = self._adapted.get(key)
            if cached is not None:
                return cached
            reg = self.adapters[(entry.kind, expected)]
            adapted = reg.adapt(entry)
            if adapted.kind != expected or adapted.adapted_from is not entry:
                raise ConfigurationError(
                    f"adapter {entry.kind}->{expected} returned a malformed entry")
            adapted.unit = entry.unit
            return self._adapted.setdefault(key, adapted)

    def unit_of(self, entry: SymbolEntry) -> ModelUnit | None:
        return self.units.get(entry.unit)
