"""JSON intermediate representation, produced by a composite visitor.

Each part builds a fragment per node on ``leave``; fragments of the children
are collected on a stack so the tree is rebuilt bottom-up in one pass.
"""

from __future__ import annotations

import json
from typing import Any

from .. import lang_arc, lang_automaton, lang_cd, lang_expr, lang_iotable
from ..family_maa import Variable
from ..kernel import ModelUnit, Scope, SymbolEntry, Visitor, Workbench, compose_visitors
from ..lang_cd import CD_ENUM_CONSTANT, CD_TYPE

IR_VERSION = "1"


class _Builder:
    def __init__(self, wb: Workbench):
        self.wb = wb
        self.stack: list[list[Any]] = [[]]
        self.unit: ModelUnit | None = None
        self.scope: Scope | None = None

    def open(self) -> None:
        self.stack.append([])

    def close(self, fragment: Any) -> None:
        self.stack.pop()
        self.stack[-1].append(fragment)

    @property
    def children(self) -> list[Any]:
        return self.stack[-1]

    def qualify_type(self, type_name: str, kind: str = CD_TYPE) -> str:
        if type_name in lang_arc.PRIMITIVES:
            return type_name
        hit = self.wb.resolve(type_name, kind, self.scope)
        if isinstance(hit, SymbolEntry):
            return qualified_name(hit.adapted_from or hit)
        return type_name


def qualified_name(entry: SymbolEntry) -> str:
    # an entry named like its unit is denoted by the unit name alone
    if entry.unit.rpartition(".")[2] == entry.name:
        return entry.unit
    return f"{entry.unit}.{entry.name}"


class _Part(Visitor):
    """Opens a child frame for every node; subclasses build fragments on leave."""

    def __init__(self, b: _Builder):
        self.b = b

    def generic_visit(self, node):
        self.b.open()
        return None


class _CdPart(_Part):
    def _name(self, node) -> str:
        unit = self.b.unit
        entry = unit.root_scope.local(node.name, CD_TYPE)
        return qualified_name(entry) if entry else f"{unit.qualified_name}.{node.name}"

    def leave_CDModel(self, node):
        self.b.close(("types", self.b.children))

    def leave_CDClass(self, node):
        members = list(self.b.children)
        self.b.close({"name": self._name(node), "kind": "class",
                      "members": members})

    def leave_CDField(self, node):
        self.b.close({"name": node.name, "type": self.b.qualify_type(node.type_name)})

    def leave_CDEnum(self, node):
        members = list(self.b.children)
        self.b.close({"name": self._name(node), "kind": "enum",
                      "members": members})

    def leave_EnumConstant(self, node):
        self.b.close(node.name)


class _ArcPart(_Part):
    def leave_ComponentType(self, node):
        comp: dict[str, Any] = {"name": self.b.unit.qualified_name, "ports": [],
                                "variables": [], "subcomponents": [], "connectors": [],
                                "behavior": None}
        for key, value in self.b.children:
            if key == "behavior":
                comp["behavior"] = value
            else:
                comp[key].append(value)
        for key in ("ports", "variables", "subcomponents"):
            comp[key].sort(key=lambda d: d["name"])
        comp["connectors"].sort(key=lambda d: (d["source"], d["target"]))
        self.b.close(("components", comp))

    def leave_Port(self, node):
        self.b.close(("ports", {"name": node.name, "direction": node.direction,
                                "type": self.b.qualify_type(node.type_name, lang_arc.ARCD_TYPE)}))

    def leave_Subcomponent(self, node):
        self.b.close(("subcomponents", {"name": node.name,
                                        "type": self.b.qualify_type(node.type_name,
                                                                    lang_arc.COMPONENT)}))

    def leave_Connector(self, node):
        self.b.close(("connectors", {"source": str(node.source), "target": str(node.target)}))


class _MaaPart(_Part):
    def leave_Variable(self, node: Variable):
        (initial,) = self.b.children
        self.b.close(("variables", {"name": node.name,
                                    "type": self.b.qualify_type(node.type_name,
                                                                lang_arc.ARCD_TYPE),
                                    "initial": initial}))


def _assignment(b: _Builder, node) -> None:
    (value,) = b.children
    b.close({"target": node.target, "value": value})


class _AutomatonPart(_Part):
    def leave_Automaton(self, node):
        out: dict[str, Any] = {"kind": "automaton", "states": [], "initial": None,
                               "transitions": []}
        for key, value in self.b.children:
            if key == "initial":
                out["initial"] = value
            else:
                out[key].append(value)
        out["states"].sort()
        self.b.close(("behavior", out))

    def leave_StateDecl(self, node):
        self.b.close(("states", node.name))

    def leave_Initial(self, node):
        self.b.close(("initial", {"state": node.state, "actions": list(self.b.children)}))

    def leave_Transition(self, node):
        parts = list(self.b.children)
        guard = parts.pop(0) if node.guard is not None else None
        self.b.close(("transitions", {"source": node.source, "target": node.target,
                                      "guard": guard, "actions": parts}))

    def leave_Assignment(self, node):
        _assignment(self.b, node)


class _TablePart(_Part):
    def leave_IOTable(self, node):
        self.b.close(("behavior", {"kind": "iotable", "rows": list(self.b.children)}))

    def leave_Row(self, node):
        guard, *effects = self.b.children
        self.b.close({"guard": guard, "effects": effects})

    def leave_Assignment(self, node):
        _assignment(self.b, node)


class _ExprPart(_Part):
    def leave_IntLit(self, node):
        self.b.close(["int", node.value])

    def leave_BoolLit(self, node):
        self.b.close(["bool", node.value])

    def leave_StringLit(self, node):
        self.b.close(["string", node.value])

    def leave_EnumLit(self, node):
        name = node.qualified
        hit = self.b.wb.resolve(name, CD_ENUM_CONSTANT, self.b.scope)
        if isinstance(hit, SymbolEntry):
            te = hit.payload["type_entry"]
            name = f"{qualified_name(te)}.{node.constant}"
        self.b.close(["enum", name])

    def leave_NameRef(self, node):
        self.b.close(["name", node.name])

    def leave_FieldAccess(self, node):
        (base,) = self.b.children
        self.b.close([".", base, node.field])

    def leave_Unary(self, node):
        (operand,) = self.b.children
        self.b.close([node.op, operand])

    def leave_Binary(self, node):
        left, right = self.b.children
        self.b.close([node.op, left, right])


def _unit_scope(unit: ModelUnit) -> Scope:
    comp = lang_arc.component_entry(unit) if isinstance(unit.ast, lang_arc.ComponentType) else None
    if comp is not None and comp.members is not None:
        return comp.members
    return unit.root_scope


def build_ir(wb: Workbench) -> tuple[dict[str, Any], int]:
    """IR document for every loaded unit, plus the number of nodes visited."""
    b = _Builder(wb)
    visitor = compose_visitors({
        lang_cd.LANGUAGE_ID: _CdPart(b),
        lang_arc.LANGUAGE_ID: _ArcPart(b),
        "maa": _MaaPart(b),
        lang_automaton.LANGUAGE_ID: _AutomatonPart(b),
        lang_iotable.LANGUAGE_ID: _TablePart(b),
        lang_expr.LANGUAGE_ID: _ExprPart(b),
    })
    types: list[dict] = []
    components: list[dict] = []
    for qname in sorted(wb.units):
        unit = wb.units[qname]
        b.unit, b.scope = unit, _unit_scope(unit)
        visitor.traverse(unit.ast)
        key, value = b.stack[0].pop()
        if key == "types":
            types.extend(value)
        else:
            components.append(value)
    types.sort(key=lambda d: d["name"])
    components.sort(key=lambda d: d["name"])
    return {"version": IR_VERSION, "types": types, "components": components}, visitor.visited


def dump_ir(doc: dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def emit_ir(wb: Workbench) -> str:
    return dump_ir(build_ir(wb)[0])
