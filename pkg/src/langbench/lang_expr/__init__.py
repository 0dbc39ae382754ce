"""Guard and assignment expression language (an OCL subset)."""

from ..kernel import register_codes
from .evaluate import DivisionByZero, EnumValue, eval_expr
from .syntax import (Binary, BoolLit, EnumLit, Expr, FieldAccess, IntLit,
                     NameRef, StringLit, Unary, parse_expr, print_expr)
from .types import (BOOL, DOUBLE, INT, PRIMITIVE_TYPES, STRING, UNKNOWN,
                    ExprType, TypeHost, named_type, typecheck_expr)

LANGUAGE_ID = "expr"

register_codes({
    "EXP0000": "expression syntax error",
    "EXP0001": "unresolved name in expression",
    "EXP0002": "operand type mismatch",
    "EXP0003": "unknown field",
    "EXP0004": "ambiguous name in expression",
})

__all__ = [
    "BOOL", "Binary", "BoolLit", "DOUBLE", "DivisionByZero", "EnumLit",
    "EnumValue", "Expr", "ExprType", "FieldAccess", "INT", "IntLit",
    "LANGUAGE_ID", "NameRef", "PRIMITIVE_TYPES", "STRING", "StringLit",
    "TypeHost", "UNKNOWN", "Unary", "eval_expr", "named_type", "parse_expr",
    "print_expr", "typecheck_expr",
]
