from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

from ..kernel import (AMBIGUOUS, NO_SPAN, Diagnostic, EvaluationFailure,
                      ExpressionSlot, Node, ParseError, Scope, Span, SymbolEntry,
                      TokenStream, Visibility, error, warning)

STATE = "State"


@dataclass
class AutNode(Node):
    language = "automaton"


@dataclass
class Assignment(AutNode):
    target: str
    value: Node
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


@dataclass
class StateDecl(AutNode):
    name: str
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


@dataclass
class Initial(AutNode):
    state: str
    actions: list[Assignment] = field(default_factory=list)
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


@dataclass
class Transition(AutNode):
    source: str
    target: str
    guard: Node | None = None
    actions: list[Assignment] = field(default_factory=list)
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


@dataclass
class Automaton(AutNode):
    body: list[StateDecl | Initial | Transition] = field(default_factory=list)
    span: Span = field(default=NO_SPAN, compare=False, repr=False)
    scope: Scope | None = field(default=None, compare=False, repr=False)

    @property
    def states(self) -> list[StateDecl]:
        return [b for b in self.body if isinstance(b, StateDecl)]

    @property
    def initials(self) -> list[Initial]:
        return [b for b in self.body if isinstance(b, Initial)]

    @property
    def transitions(self) -> list[Transition]:
        return [b for b in self.body if isinstance(b, Transition)]

    @property
    def initial(self) -> Initial:
        return self.initials[0]


class StepError(Exception):
    """An embedded expression failed while stepping; carries the element's span."""

    def __init__(self, span: Span, cause: EvaluationFailure):
        super().__init__(str(cause))
        self.span = span
        self.cause = cause


ExprParser = Callable[[TokenStream], Node]


def parse_automaton(ts: TokenStream, expr: ExprParser) -> Automaton:
    try:
        kw = ts.expect("automaton")
        aut = Automaton(span=kw.span)
        ts.expect("{")
        while not ts.accept("}"):
            if ts.at("state"):
                ts.advance()
                while True:
                    name = ts.expect_ident("state name")
                    aut.body.append(StateDecl(name.text, span=name.span))
                    if not ts.accept(","):
                        break
                ts.expect(";")
            elif ts.at("initial"):
                tok = ts.advance()
                name = ts.expect_ident("state name")
                actions = _actions(ts, expr) if ts.accept("/") else []
                ts.expect(";")
                aut.body.append(Initial(name.text, actions, span=tok.span))
            else:
                src = ts.expect_ident("'state', 'initial' or a transition")
                ts.expect("->")
                tgt = ts.expect_ident("target state")
                guard = None
                if ts.accept("["):
                    guard = expr(ts)
                    ts.expect("]")
                actions = _actions(ts, expr) if ts.accept("/") else []
                ts.expect(";")
                aut.body.append(Transition(src.text, tgt.text, guard, actions, span=src.span))
        return aut
    except ParseError as exc:
        raise exc.claim("AUT0000")


def _actions(ts: TokenStream, expr: ExprParser) -> list[Assignment]:
    ts.expect("{")
    actions = []
    if not ts.at("}"):
        while True:
            target = ts.expect_ident("assignment target")
            ts.expect("=")
            actions.append(Assignment(target.text, expr(ts), span=target.span))
            if not ts.accept(","):
                break
    ts.expect("}")
    return actions


def define_automaton_symbols(aut: Automaton, host: Scope) -> list[Diagnostic]:
    aut.scope = Scope(host)
    diags = []
    for st in aut.states:
        if aut.scope.add(SymbolEntry(st.name, STATE, Visibility.INTERNAL, st.span)) is not None:
            diags.append(error("AUT0001", st.span, f"duplicate state '{st.name}'"))
    return diags


def check_automaton(aut: Automaton, slot: ExpressionSlot) -> list[Diagnostic]:
    scope = aut.scope
    declared = {s.name for s in aut.states}
    diags: list[Diagnostic] = []

    if len(aut.initials) != 1:
        where = aut.initials[1].span if aut.initials else aut.span
        diags.append(error("AUT0003", where,
                           f"expected exactly one initial clause, found {len(aut.initials)}"))
    for ini in aut.initials:
        if ini.state not in declared:
            diags.append(error("AUT0002", ini.span, f"initial state '{ini.state}' is not declared"))
        diags.extend(_check_actions(ini.actions, scope, slot))

    unconditional: dict[str, Transition] = {}
    for t in aut.transitions:
        for name in (t.source, t.target):
            if name not in declared:
                diags.append(error("AUT0004", t.span, f"state '{name}' is not declared"))
        if t.guard is not None:
            gt, gd = slot.typecheck(t.guard, scope)
            diags.extend(gd)
            if not slot.is_unknown(gt) and not slot.is_boolean(gt):
                diags.append(error("AUT0005", t.span, f"guard has type {gt}, expected boolean"))
        diags.extend(_check_actions(t.actions, scope, slot))
        if t.guard is None or slot.is_true_literal(t.guard):
            first = unconditional.get(t.source)
            if first is not None:
                diags.append(warning("AUT0008", t.span,
                                     f"transition never fires: an earlier transition from "
                                     f"'{t.source}' is unconditional"))
            else:
                unconditional[t.source] = t
    return diags


def _check_actions(actions: list[Assignment], scope: Scope, slot: ExpressionSlot) -> list[Diagnostic]:
    diags = []
    for a in actions:
        vt, vd = slot.typecheck(a.value, scope)
        diags.extend(vd)
        tt = slot.assign_target(a.target, scope)
        if tt is AMBIGUOUS:
            continue
        if tt is None:
            diags.append(error("AUT0006", a.span, f"'{a.target}' is not an output port or variable"))
        elif not slot.is_unknown(tt) and not slot.is_unknown(vt) and tt != vt:
            diags.append(error("AUT0007", a.span, f"cannot assign {vt} to '{a.target}' of type {tt}"))
    return diags


Effects = list[tuple[str, Any]]


def _evaluate(actions: list[Assignment], valuation: Mapping[str, Any], slot) -> Effects:
    # every right-hand side sees the pre-step valuation
    effects = []
    for a in actions:
        try:
            effects.append((a.target, slot.evaluate(a.value, valuation)))
        except EvaluationFailure as exc:
            raise StepError(a.span, exc) from exc
    return effects


def initial_effects(aut: Automaton, valuation: Mapping[str, Any], slot) -> Effects:
    return _evaluate(aut.initial.actions, valuation, slot)


def step_automaton(aut: Automaton, current: str, valuation: Mapping[str, Any],
                   slot) -> tuple[str, Effects]:
    """Fire the first enabled transition leaving ``current``; stutter if none is."""
    for t in aut.transitions:
        if t.source != current:
            continue
        if t.guard is not None:
            try:
                enabled = slot.evaluate(t.guard, valuation)
            except EvaluationFailure as exc:
                raise StepError(t.span, exc) from exc
            if not enabled:
                continue
        return t.target, _evaluate(t.actions, valuation, slot)
    return current, []
