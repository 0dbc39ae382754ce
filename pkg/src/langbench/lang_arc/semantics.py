"""Symbols and context conditions of the component & connector language."""

from __future__ import annotations

from collections import Counter

from ..kernel import (NOT_FOUND, Diagnostic, ModelUnit, Scope, SymbolEntry,
                      Visibility, Workbench, error, warning)
from .syntax import IN, OUT, ComponentType, Connector, Endpoint

COMPONENT = "Component"
PORT = "Port"
SUBCOMPONENT = "Subcomponent"
ARCD_TYPE = "ArcdType"

# names usable as port types without any type language present
PRIMITIVES = ("int", "boolean", "double", "String")


def define_arc_symbols(unit: ModelUnit, wb: Workbench | None = None) -> list[Diagnostic]:
    comp: ComponentType = unit.ast
    root = unit.root_scope
    root.imports = list(comp.imports)
    entry = SymbolEntry(comp.name, COMPONENT, Visibility.EXPORTED, comp.span,
                        payload={"node": comp})
    root.add(entry)
    body = Scope(root, owner=entry)
    diags = []
    for port in comp.ports:
        pe = SymbolEntry(port.name, PORT, Visibility.EXPORTED, port.span,
                         payload={"direction": port.direction, "type_name": port.type_name,
                                  "node": port})
        if body.add(pe) is not None:
            diags.append(error("ARC0001", port.span, f"duplicate port '{port.name}'"))
    for sub in comp.subcomponents:
        se = SymbolEntry(sub.name, SUBCOMPONENT, Visibility.INTERNAL, sub.span,
                         payload={"type_name": sub.type_name, "node": sub})
        if body.add(se) is not None:
            diags.append(error("ARC0002", sub.span, f"duplicate subcomponent '{sub.name}'"))
    return diags


def component_entry(unit: ModelUnit) -> SymbolEntry | None:
    return unit.root_scope.local(unit.ast.name, COMPONENT)


def resolve_port_type(port: SymbolEntry, wb: Workbench):
    """The port's type: a primitive name, an ArcdType entry, NOT_FOUND or AMBIGUOUS."""
    type_name = port.payload["type_name"]
    if type_name in PRIMITIVES:
        return type_name
    return wb.resolve(type_name, ARCD_TYPE, port.scope)


def resolve_subcomponent_type(sub: SymbolEntry, wb: Workbench):
    return wb.resolve(sub.payload["type_name"], COMPONENT, sub.scope)


def resolve_endpoint(comp: SymbolEntry, ep: Endpoint, wb: Workbench):
    """Port entry an endpoint denotes, or None.

    Raises LookupError if the subcomponent's type itself does not resolve, so
    callers can avoid reporting a follow-up error.
    """
    body = comp.members
    if ep.subcomponent is None:
        return body.local(ep.port, PORT)
    sub = body.local(ep.subcomponent, SUBCOMPONENT)
    if sub is None:
        return None
    ctype = resolve_subcomponent_type(sub, wb)
    if not isinstance(ctype, SymbolEntry):
        raise LookupError(ep.subcomponent)
    hit = wb.resolve_member(ctype, ep.port, PORT, body)
    return hit if isinstance(hit, SymbolEntry) else None


def _reaches(wb: Workbench, start: SymbolEntry, goal: SymbolEntry) -> bool:
    seen = set()
    stack = [start]
    while stack:
        comp = stack.pop()
        if comp is goal:
            return True
        if comp in seen or comp.members is None:
            continue
        seen.add(comp)
        for sub in comp.members.entries():
            if sub.kind == SUBCOMPONENT:
                t = resolve_subcomponent_type(sub, wb)
                if isinstance(t, SymbolEntry):
                    stack.append(t)
    return False


def check_arc(unit: ModelUnit, wb: Workbench) -> list[Diagnostic]:
    comp_node: ComponentType = unit.ast
    comp = component_entry(unit)
    body = comp.members
    diags: list[Diagnostic] = []

    for port in comp_node.ports:
        pe = body.local(port.name, PORT)
        if pe is None or pe.payload["node"] is not port:
            continue
        t = resolve_port_type(pe, wb)
        if not isinstance(t, (str, SymbolEntry)):
            why = "ambiguous" if t is not NOT_FOUND else "unresolved"
            diags.append(error("ARC0003", port.span, f"{why} port type '{port.type_name}'"))

    sub_types: dict[str, SymbolEntry] = {}
    for sub in comp_node.subcomponents:
        se = body.local(sub.name, SUBCOMPONENT)
        t = resolve_subcomponent_type(se, wb)
        if not isinstance(t, SymbolEntry):
            diags.append(error("ARC0004", sub.span, f"unresolved component type '{sub.type_name}'"))
            continue
        sub_types[sub.name] = t
        if _reaches(wb, t, comp):
            diags.append(error("ARC0008", sub.span,
                               f"instantiating '{sub.type_name}' creates a cycle through '{comp.name}'"))

    targets = Counter()
    for con in comp_node.connectors:
        targets[con.target] += 1
        diags.extend(_check_connector(comp, con, wb))
    seen: set[Endpoint] = set()
    reported: set[Endpoint] = set()
    for con in comp_node.connectors:
        # once per port, at the first redundant connector
        if con.target in seen and con.target not in reported:
            reported.add(con.target)
            diags.append(error("ARC0007", con.span, f"'{con.target}' has more than one incoming connector"))
        seen.add(con.target)

    connected = set(targets)
    for sub in comp_node.subcomponents:
        t = sub_types.get(sub.name)
        if t is None:
            continue
        for pe in sorted(t.members.entries(), key=lambda e: e.span):
            if pe.kind == PORT and pe.payload["direction"] == IN and \
                    Endpoint(sub.name, pe.name) not in connected:
                diags.append(warning("ARC0009", sub.span,
                                     f"input port '{sub.name}.{pe.name}' is not connected"))
    return diags


def _check_connector(comp: SymbolEntry, con: Connector, wb: Workbench) -> list[Diagnostic]:
    diags = []
    ends = []
    for ep in (con.source, con.target):
        try:
            pe = resolve_endpoint(comp, ep, wb)
        except LookupError:
            return []
        if pe is None:
            diags.append(error("ARC0005", con.span, f"connector endpoint '{ep}' does not exist"))
        ends.append(pe)
    if diags:
        return diags
    src, tgt = ends
    src_ok = src.payload["direction"] == (IN if con.source.subcomponent is None else OUT)
    tgt_ok = tgt.payload["direction"] == (OUT if con.target.subcomponent is None else IN)
    if not (src_ok and tgt_ok):
        diags.append(error("ARC0006", con.span,
                           f"connector '{con.source} -> {con.target}' violates port directions"))
    return diags
