from __future__ import annotations

from dataclasses import dataclass, field

from .. import lang_arc, lang_automaton, lang_cd, lang_expr, lang_iotable
from ..kernel import (AMBIGUOUS, NO_SPAN, AdapterRegistration, Diagnostic,
                      ModelUnit, Node, ParseError, Phase, Scope, Span,
                      SymbolEntry, TokenStream, Visibility, Workbench, Workflow,
                      error, register_codes, warning)
from ..lang_arc import ARCD_TYPE, PORT, ComponentType, ExtensionPoint
from ..lang_automaton import Automaton
from ..lang_expr import (BOOL, PRIMITIVE_TYPES, UNKNOWN, BoolLit, ExprType,
                         TypeHost, named_type)
from ..lang_iotable import IOTable

LANGUAGE_ID = "maa"
EXTENSION = ".maa"
VARIABLE = "Variable"
EXPR_NAME = "ExprName"

register_codes({
    "MAA0100": "variable declaration syntax error",
    "MAA0101": "connector joins ports of different types",
    "MAA0102": "duplicate variable name",
    "MAA0103": "unresolved variable type",
    "MAA0104": "variable initial value has the wrong type",
    "MAA0105": "component has more than one behavior element",
    "MAA0106": "port and variable share a name, making expression names ambiguous",
    "MAA0107": "decomposed component has a behavior element",
    "MAA0108": "atomic component with ports has no behavior (warning)",
})


@dataclass
class Variable(Node):
    language = "maa"
    type_name: str
    name: str
    initial: lang_expr.Expr
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


def parse_slot(ts: TokenStream) -> lang_expr.Expr:
    """Expression parser bound at every guard and assignment slot."""
    try:
        return lang_expr.parse_expr(ts)
    except ParseError as exc:
        raise exc.claim("EXP0000")


def parse_variable(ts: TokenStream) -> Variable:
    try:
        ts.expect("variable")
        type_name, _ = ts.qualified_name()
        name = ts.expect_ident("variable name")
        ts.expect("=")
        initial = parse_slot(ts)
        ts.expect(";")
    except ParseError as exc:
        raise exc.claim("MAA0100")
    return Variable(type_name, name.text, initial, span=name.span)


def behavior_of(comp: ComponentType) -> list[Automaton | IOTable]:
    return [e for e in comp.extensions if isinstance(e, (Automaton, IOTable))]


def variables_of(comp: ComponentType) -> list[Variable]:
    return [e for e in comp.extensions if isinstance(e, Variable)]


# -- types ---------------------------------------------------------------

def expr_type_of(type_name: str, scope: Scope, wb: Workbench) -> ExprType | None:
    """Expression type for a port/variable type name; None if it does not resolve."""
    if type_name in PRIMITIVE_TYPES:
        return PRIMITIVE_TYPES[type_name]
    hit = wb.resolve(type_name, ARCD_TYPE, scope)
    if not isinstance(hit, SymbolEntry):
        return None
    return named_type(hit.payload["qualified"], hit.payload["cd_kind"])


class FamilySlot:
    """Binds the expression language at the guard/assignment slots of one component."""

    def __init__(self, wb: Workbench, scope: Scope, poisoned=frozenset()):
        self.wb = wb
        self.host = TypeHost(resolve=wb.resolve, entry_type=self._entry_type,
                             enum_kind=lang_cd.CD_ENUM_CONSTANT, name_kind=EXPR_NAME,
                             field_type=self._field_type, poisoned=frozenset(poisoned))
        self.scope = scope

    parse = staticmethod(parse_slot)
    evaluate = staticmethod(lang_expr.eval_expr)

    def typecheck(self, expr, scope):
        return lang_expr.typecheck_expr(expr, scope, self.host)

    def is_true_literal(self, expr) -> bool:
        return isinstance(expr, BoolLit) and expr.value is True

    def is_boolean(self, t) -> bool:
        return t == BOOL

    def is_unknown(self, t) -> bool:
        return t == UNKNOWN

    def assign_target(self, name: str, scope: Scope):
        hit = self.wb.resolve(name, EXPR_NAME, scope)
        if hit is AMBIGUOUS:
            return AMBIGUOUS
        if not isinstance(hit, SymbolEntry):
            return None
        p = hit.payload
        if p["role"] == "variable" or p.get("direction") == lang_arc.OUT:
            return p["type"] or UNKNOWN
        return None

    def _entry_type(self, entry: SymbolEntry) -> ExprType | None:
        if entry.kind == lang_cd.CD_ENUM_CONSTANT:
            te = entry.payload["type_entry"]
            return named_type(f"{te.unit}.{te.name}", "enum")
        return entry.payload.get("type")

    def _field_type(self, t: ExprType, name: str) -> ExprType | None:
        cls = self.wb.resolve(t.name, lang_cd.CD_TYPE, self.scope)
        if not isinstance(cls, SymbolEntry) or cls.members is None:
            return None
        fe = cls.members.local(name, lang_cd.CD_FIELD)
        if fe is None:
            return None
        type_name = fe.payload["type_name"]
        if type_name in PRIMITIVE_TYPES:
            return PRIMITIVE_TYPES[type_name]
        ft = self.wb.resolve(type_name, lang_cd.CD_TYPE, fe.scope)
        if not isinstance(ft, SymbolEntry):
            return None
        return named_type(f"{ft.unit}.{ft.name}", ft.payload["cd_kind"])


# -- adapters ------------------------------------------------------------

def _adapters(wb: Workbench) -> list[AdapterRegistration]:
    def cd_type_to_arcd(e: SymbolEntry) -> SymbolEntry:
        return SymbolEntry(e.name, ARCD_TYPE, e.visibility, e.span,
                           payload={"qualified": f"{e.unit}.{e.name}",
                                    "cd_kind": e.payload["cd_kind"]},
                           adapted_from=e)

    def port_to_name(e: SymbolEntry) -> SymbolEntry:
        return SymbolEntry(e.name, EXPR_NAME, e.visibility, e.span,
                           payload={"role": "port", "direction": e.payload["direction"],
                                    "type": expr_type_of(e.payload["type_name"], e.scope, wb)},
                           adapted_from=e)

    def variable_to_name(e: SymbolEntry) -> SymbolEntry:
        return SymbolEntry(e.name, EXPR_NAME, e.visibility, e.span,
                           payload={"role": "variable",
                                    "type": expr_type_of(e.payload["type_name"], e.scope, wb)},
                           adapted_from=e)

    return [
        AdapterRegistration(lang_cd.CD_TYPE, ARCD_TYPE, cd_type_to_arcd),
        AdapterRegistration(PORT, EXPR_NAME, port_to_name),
        AdapterRegistration(VARIABLE, EXPR_NAME, variable_to_name),
    ]


# -- workflows -----------------------------------------------------------

def define_family_symbols(unit: ModelUnit, wb: Workbench | None = None) -> list[Diagnostic]:
    comp: ComponentType = unit.ast
    body = lang_arc.component_entry(unit).members
    diags = []
    for var in variables_of(comp):
        entry = SymbolEntry(var.name, VARIABLE, Visibility.INTERNAL, var.span,
                            payload={"type_name": var.type_name, "node": var})
        if body.add(entry) is not None:
            diags.append(error("MAA0102", var.span, f"duplicate variable '{var.name}'"))
    for beh in behavior_of(comp):
        if isinstance(beh, Automaton):
            diags.extend(lang_automaton.define_automaton_symbols(beh, body))
        else:
            diags.extend(lang_iotable.define_iotable_symbols(beh, body))
    return diags


def _port_type_key(pe: SymbolEntry, wb: Workbench):
    t = lang_arc.resolve_port_type(pe, wb)
    return t if isinstance(t, (str, SymbolEntry)) else None


def check_family(unit: ModelUnit, wb: Workbench) -> list[Diagnostic]:
    comp: ComponentType = unit.ast
    centry = lang_arc.component_entry(unit)
    body = centry.members
    diags: list[Diagnostic] = []

    poisoned = set()
    for port in comp.ports:
        if port.type_name not in PRIMITIVE_TYPES and \
                expr_type_of(port.type_name, body, wb) is None:
            poisoned.add(port.type_name)

    for con in comp.connectors:
        try:
            src = lang_arc.resolve_endpoint(centry, con.source, wb)
            tgt = lang_arc.resolve_endpoint(centry, con.target, wb)
        except LookupError:
            continue
        if src is None or tgt is None:
            continue
        ks, kt = _port_type_key(src, wb), _port_type_key(tgt, wb)
        if ks is not None and kt is not None and ks != kt:
            diags.append(error("MAA0101", con.span,
                               f"connector '{con.source} -> {con.target}' joins "
                               f"{src.payload['type_name']} to {tgt.payload['type_name']}"))

    slot = FamilySlot(wb, body, poisoned)
    port_names = {p.name for p in comp.ports}
    for var in variables_of(comp):
        vt = expr_type_of(var.type_name, body, wb)
        if vt is None:
            poisoned.add(var.type_name)
            diags.append(error("MAA0103", var.span, f"unresolved variable type '{var.type_name}'"))
        slot = FamilySlot(wb, body, poisoned)
        it, idiags = slot.typecheck(var.initial, body)
        diags.extend(idiags)
        if vt is not None and it != UNKNOWN and it != vt:
            diags.append(error("MAA0104", var.span,
                               f"initial value of '{var.name}' has type {it}, expected {vt}"))
        if var.name in port_names and wb.resolve(var.name, EXPR_NAME, body) is AMBIGUOUS:
            diags.append(error("MAA0106", var.span,
                               f"variable '{var.name}' shares its name with a port"))

    behaviors = behavior_of(comp)
    for extra in behaviors[1:]:
        diags.append(error("MAA0105", extra.span, "component already has a behavior element"))
    if comp.decomposed:
        for beh in behaviors:
            diags.append(error("MAA0107", beh.span, "decomposed components cannot have behavior"))
    elif comp.ports and not behaviors:
        diags.append(warning("MAA0108", comp.span,
                             f"atomic component '{comp.name}' has ports but no behavior"))

    for beh in behaviors:
        if isinstance(beh, Automaton):
            diags.extend(lang_automaton.check_automaton(beh, slot))
        else:
            diags.extend(lang_iotable.check_iotable(beh, slot))
    return diags


@dataclass(frozen=True)
class FamilyConfiguration:
    """The composed topology: which languages are aggregated, inherited and embedded."""

    aggregated: tuple[str, ...]
    inherits: tuple[str, str]
    embeddings: tuple[tuple[str, str], ...]
    adapters: tuple[tuple[str, str], ...]


def register_family(wb: Workbench) -> FamilyConfiguration:
    behavior = {
        "automaton": lambda ts: lang_automaton.parse_automaton(ts, parse_slot),
        "iotable": lambda ts: lang_iotable.parse_iotable(ts, parse_slot),
    }
    ext = ExtensionPoint(elements={"variable": parse_variable}, behavior=behavior)
    wb.register_language(lang_cd.descriptor())
    wb.register_language(lang_arc.descriptor())
    wb.register_language(lang_arc.descriptor(
        ext, LANGUAGE_ID, EXTENSION,
        [Workflow("maa-define", Phase.DEFINE, define_family_symbols),
         Workflow("maa-check", Phase.CHECK, check_family)]))
    regs = _adapters(wb)
    for reg in regs:
        wb.register_adapter(reg)
    return FamilyConfiguration(
        aggregated=(lang_cd.LANGUAGE_ID, LANGUAGE_ID),
        inherits=(LANGUAGE_ID, lang_arc.LANGUAGE_ID),
        embeddings=((LANGUAGE_ID, lang_automaton.LANGUAGE_ID),
                    (LANGUAGE_ID, lang_iotable.LANGUAGE_ID),
                    (lang_automaton.LANGUAGE_ID, lang_expr.LANGUAGE_ID),
                    (lang_iotable.LANGUAGE_ID, lang_expr.LANGUAGE_ID),
                    (LANGUAGE_ID, lang_expr.LANGUAGE_ID)),
        adapters=tuple((r.from_kind, r.to_kind) for r in regs),
    )
