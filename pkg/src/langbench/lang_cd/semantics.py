"""Symbol definition and context conditions for class diagrams."""

from __future__ import annotations

from ..kernel import (Diagnostic, ModelUnit, Scope, SymbolEntry, Visibility,
                      Workbench, error)
from .syntax import PRIMITIVES, CDClass, CDEnum, CDModel

CD_TYPE = "CDType"
CD_ENUM_CONSTANT = "CDEnumConstant"
CD_FIELD = "CDField"


def define_cd_symbols(unit: ModelUnit, wb: Workbench | None = None) -> list[Diagnostic]:
    model: CDModel = unit.ast
    root = unit.root_scope
    diags = []
    for el in model.elements:
        kind = "enum" if isinstance(el, CDEnum) else "class"
        entry = SymbolEntry(el.name, CD_TYPE, Visibility.EXPORTED, el.span,
                            payload={"cd_kind": kind, "node": el})
        if root.add(entry) is not None:
            diags.append(error("CD0001", el.span, f"duplicate type '{el.name}' in diagram '{model.name}'"))
            continue
        body = Scope(root, owner=entry)
        if isinstance(el, CDEnum):
            entry.payload["constants"] = [c.name for c in el.constants]
            for c in el.constants:
                # duplicates are reported as CD0004 during CHECK
                root.add(SymbolEntry(f"{el.name}.{c.name}", CD_ENUM_CONSTANT,
                                     Visibility.EXPORTED, c.span,
                                     payload={"enum": el.name, "constant": c.name,
                                              "type_entry": entry}))
        else:
            for f in el.fields:
                body.add(SymbolEntry(f.name, CD_FIELD, Visibility.INTERNAL, f.span,
                                     payload={"type_name": f.type_name,
                                              "primitive": f.type_name in PRIMITIVES}))
    return diags


def check_cd(unit: ModelUnit, wb: Workbench) -> list[Diagnostic]:
    model: CDModel = unit.ast
    diags = []
    for el in model.elements:
        if isinstance(el, CDClass):
            seen = set()
            for f in el.fields:
                if f.name in seen:
                    diags.append(error("CD0003", f.span, f"duplicate field '{f.name}' in class '{el.name}'"))
                seen.add(f.name)
                if f.type_name in PRIMITIVES:
                    continue
                hit = wb.resolve(f.type_name, CD_TYPE, unit.root_scope)
                if not isinstance(hit, SymbolEntry):
                    diags.append(error("CD0002", f.span, f"unknown field type '{f.type_name}'"))
        else:
            seen = set()
            for c in el.constants:
                if c.name in seen:
                    diags.append(error("CD0004", c.span, f"duplicate constant '{c.name}' in enum '{el.name}'"))
                seen.add(c.name)
    return diags
