"""Static typing of expressions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from ..kernel import AMBIGUOUS, Diagnostic, Scope, SymbolEntry, error
from .syntax import (Binary, BoolLit, EnumLit, Expr, FieldAccess, IntLit,
                     NameRef, StringLit, Unary)


@dataclass(frozen=True)
class ExprType:
    name: str
    kind: str  # "primitive", "enum", "class" or "unknown"

    def __str__(self) -> str:
        return self.name


INT = ExprType("int", "primitive")
BOOL = ExprType("boolean", "primitive")
STRING = ExprType("String", "primitive")
DOUBLE = ExprType("double", "primitive")
# type of a subexpression whose error was already reported elsewhere
UNKNOWN = ExprType("?", "unknown")

PRIMITIVE_TYPES = {t.name: t for t in (INT, BOOL, STRING, DOUBLE)}

ARITHMETIC = {"+", "-", "*", "/", "%"}
RELATIONAL = {"<", "<=", ">", ">="}
EQUALITY = {"==", "!="}
LOGICAL = {"&&", "||", "implies"}


def named_type(qualified_name: str, kind: str) -> ExprType:
    return ExprType(qualified_name, kind)


@dataclass
class TypeHost:
    """What the embedding host supplies for name resolution and typing.

    ``resolve(name, kind, scope)`` follows the kernel's resolution contract;
    ``entry_type`` maps a resolved entry to its ExprType (None: the entry's own
    type is broken and was reported by the host); ``field_type`` gives the
    type of a member of a class type or None.
    """

    resolve: Callable[[str, str, Scope], Any]
    entry_type: Callable[[SymbolEntry], ExprType | None]
    enum_kind: str
    name_kind: str = "ExprName"
    field_type: Callable[[ExprType, str], ExprType | None] = lambda t, f: None
    poisoned: frozenset[str] = field(default_factory=frozenset)


def typecheck_expr(e: Expr, scope: Scope, host: TypeHost) -> tuple[ExprType, list[Diagnostic]]:
    diags: list[Diagnostic] = []
    return _type(e, scope, host, diags), diags


def _type(e: Expr, scope: Scope, host: TypeHost, diags: list[Diagnostic]) -> ExprType:
    if isinstance(e, IntLit):
        return INT
    if isinstance(e, BoolLit):
        return BOOL
    if isinstance(e, StringLit):
        return STRING
    if isinstance(e, EnumLit):
        hit = host.resolve(e.qualified, host.enum_kind, scope)
        if hit is AMBIGUOUS:
            diags.append(error("EXP0004", e.span, f"ambiguous enum constant '{e.qualified}'"))
            return UNKNOWN
        if not isinstance(hit, SymbolEntry):
            if e.enum not in host.poisoned:
                diags.append(error("EXP0001", e.span, f"unresolved enum constant '{e.qualified}'"))
            return UNKNOWN
        return host.entry_type(hit) or UNKNOWN
    if isinstance(e, NameRef):
        hit = host.resolve(e.name, host.name_kind, scope)
        if hit is AMBIGUOUS:
            diags.append(error("EXP0004", e.span, f"ambiguous name '{e.name}'"))
            return UNKNOWN
        if not isinstance(hit, SymbolEntry):
            diags.append(error("EXP0001", e.span, f"unresolved name '{e.name}'"))
            return UNKNOWN
        return host.entry_type(hit) or UNKNOWN
    if isinstance(e, FieldAccess):
        base = _type(e.base, scope, host, diags)
        if base is UNKNOWN:
            return UNKNOWN
        ft = host.field_type(base, e.field) if base.kind == "class" else None
        if ft is None:
            diags.append(error("EXP0003", e.span, f"type '{base}' has no field '{e.field}'"))
            return UNKNOWN
        return ft
    if isinstance(e, Unary):
        t = _type(e.operand, scope, host, diags)
        want = BOOL if e.op == "!" else INT
        _require(t, want, e, diags)
        return want
    if isinstance(e, Binary):
        lt = _type(e.left, scope, host, diags)
        rt = _type(e.right, scope, host, diags)
        if e.op in ARITHMETIC:
            _require(lt, INT, e, diags) or _require(rt, INT, e, diags)
            return INT
        if e.op in RELATIONAL:
            _require(lt, INT, e, diags) or _require(rt, INT, e, diags)
            return BOOL
        if e.op in LOGICAL:
            _require(lt, BOOL, e, diags) or _require(rt, BOOL, e, diags)
            return BOOL
        if e.op in EQUALITY:
            if UNKNOWN not in (lt, rt) and lt != rt:
                diags.append(error("EXP0002", e.span,
                                   f"operands of '{e.op}' have different types '{lt}' and '{rt}'"))
            return BOOL
    raise TypeError(f"not an expression: {e!r}")


def _require(actual: ExprType, wanted: ExprType, e: Expr, diags: list[Diagnostic]) -> bool:
    """Report a mismatch; return True if one was reported."""
    if actual is UNKNOWN or actual == wanted:
        return False
    op = getattr(e, "op", "?")
    diags.append(error("EXP0002", e.span, f"operator '{op}' expects {wanted}, got {actual}"))
    return True
