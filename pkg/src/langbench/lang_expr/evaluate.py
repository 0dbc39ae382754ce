"""Expression evaluation over a valuation of names to runtime values."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping

from ..kernel import EvaluationFailure, Span
from .syntax import (Binary, BoolLit, EnumLit, Expr, FieldAccess, IntLit,
                     NameRef, StringLit, Unary)


@dataclass(frozen=True)
class EnumValue:
    enum: str
    constant: str

    def __str__(self) -> str:
        return f"{self.enum}.{self.constant}"


class DivisionByZero(EvaluationFailure):
    def __init__(self, span: Span):
        super().__init__(f"division by zero at {span}")
        self.span = span


def eval_expr(e: Expr, valuation: Mapping[str, Any]) -> Any:
    if isinstance(e, (IntLit, BoolLit, StringLit)):
        return e.value
    if isinstance(e, EnumLit):
        return EnumValue(e.enum, e.constant)
    if isinstance(e, NameRef):
        return valuation[e.name]
    if isinstance(e, FieldAccess):
        base = eval_expr(e.base, valuation)
        if isinstance(base, Mapping):
            return base[e.field]
        return getattr(base, e.field)
    if isinstance(e, Unary):
        v = eval_expr(e.operand, valuation)
        return (not v) if e.op == "!" else -v
    if isinstance(e, Binary):
        op = e.op
        left = eval_expr(e.left, valuation)
        if op == "&&":
            return bool(left) and bool(eval_expr(e.right, valuation))
        if op == "||":
            return bool(left) or bool(eval_expr(e.right, valuation))
        if op == "implies":
            return (not left) or bool(eval_expr(e.right, valuation))
        right = eval_expr(e.right, valuation)
        if op == "==":
            return left == right
        if op == "!=":
            return left != right
        if op == "<":
            return left < right
        if op == "<=":
            return left <= right
        if op == ">":
            return left > right
        if op == ">=":
            return left >= right
        if op == "+":
            return left + right
        if op == "-":
            return left - right
        if op == "*":
            return left * right
        if op in ("/", "%"):
            if right == 0:
                raise DivisionByZero(e.span)
            quotient = abs(left) // abs(right)
            if (left < 0) != (right < 0):
                quotient = -quotient
            return quotient if op == "/" else left - right * quotient
    raise TypeError(f"not an expression: {e!r}")
