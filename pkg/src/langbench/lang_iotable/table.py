from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

from ..kernel import (AMBIGUOUS, NO_SPAN, Diagnostic, EvaluationFailure,
                      ExpressionSlot, Node, ParseError, Scope, Span, SymbolEntry,
                      TokenStream, Visibility, error, warning)

ROW = "Row"


@dataclass
class TableNode(Node):
    language = "iotable"


@dataclass
class Assignment(TableNode):
    target: str
    value: Node
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


@dataclass
class Row(TableNode):
    guard: Node
    effects: list[Assignment] = field(default_factory=list)
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


@dataclass
class IOTable(TableNode):
    rows: list[Row] = field(default_factory=list)
    span: Span = field(default=NO_SPAN, compare=False, repr=False)
    scope: Scope | None = field(default=None, compare=False, repr=False)


class StepError(Exception):
    def __init__(self, span: Span, cause: EvaluationFailure):
        super().__init__(str(cause))
        self.span = span
        self.cause = cause


def parse_iotable(ts: TokenStream, expr: Callable[[TokenStream], Node]) -> IOTable:
    try:
        kw = ts.expect("iotable")
        table = IOTable(span=kw.span)
        ts.expect("{")
        while not ts.accept("}"):
            tok = ts.expect("row")
            ts.expect("[")
            guard = expr(ts)
            ts.expect("]")
            ts.expect("/")
            ts.expect("{")
            effects = []
            if not ts.at("}"):
                while True:
                    target = ts.expect_ident("effect target")
                    ts.expect("=")
                    effects.append(Assignment(target.text, expr(ts), span=target.span))
                    if not ts.accept(","):
                        break
            ts.expect("}")
            ts.expect(";")
            table.rows.append(Row(guard, effects, span=tok.span))
        return table
    except ParseError as exc:
        raise exc.claim("TBL0000")


def define_iotable_symbols(table: IOTable, host: Scope) -> list[Diagnostic]:
    table.scope = Scope(host)
    for i, row in enumerate(table.rows, 1):
        table.scope.add(SymbolEntry(f"row{i}", ROW, Visibility.INTERNAL, row.span))
    return []


def check_iotable(table: IOTable, slot: ExpressionSlot) -> list[Diagnostic]:
    scope = table.scope
    diags: list[Diagnostic] = []
    if not table.rows:
        return [error("TBL0001", table.span, "I/O table has no rows")]
    for row in table.rows:
        gt, gd = slot.typecheck(row.guard, scope)
        diags.extend(gd)
        if not slot.is_unknown(gt) and not slot.is_boolean(gt):
            diags.append(error("TBL0002", row.span, f"row guard has type {gt}, expected boolean"))
        seen = set()
        for eff in row.effects:
            if eff.target in seen:
                diags.append(error("TBL0005", eff.span, f"'{eff.target}' is assigned twice in this row"))
            seen.add(eff.target)
            vt, vd = slot.typecheck(eff.value, scope)
            diags.extend(vd)
            tt = slot.assign_target(eff.target, scope)
            if tt is AMBIGUOUS:
                continue
            if tt is None:
                diags.append(error("TBL0003", eff.span, f"'{eff.target}' is not an output port or variable"))
            elif not slot.is_unknown(tt) and not slot.is_unknown(vt) and tt != vt:
                diags.append(error("TBL0004", eff.span, f"cannot assign {vt} to '{eff.target}' of type {tt}"))
    if not slot.is_true_literal(table.rows[-1].guard):
        diags.append(warning("TBL0006", table.rows[-1].span,
                             "last row is not guarded by 'true'; some inputs may match no row"))
    return diags


def step_iotable(table: IOTable, valuation: Mapping[str, Any], slot) -> list[tuple[str, Any]]:
    """Effects of the first row whose guard holds, evaluated on the pre-step valuation."""
    for row in table.rows:
        try:
            if not slot.evaluate(row.guard, valuation):
                continue
            return [(eff.target, slot.evaluate(eff.value, valuation)) for eff in row.effects]
        except EvaluationFailure as exc:
            raise StepError(row.span, exc) from exc
    return []
