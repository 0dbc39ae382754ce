"""Contract between a host language and the expression language bound at its slots.

Behavior sublanguages (automata, tables) never see the expression language
directly; the composing family hands them an object with this shape.
"""

from __future__ import annotations

from typing import Any, Mapping, Protocol

from .diagnostics import Diagnostic
from .lexer import TokenStream
from .symbols import Scope
from .visitor import Node


class AssignTarget(Protocol):
    name: str
    type: Any


class ExpressionSlot(Protocol):
    def parse(self, ts: TokenStream) -> Node: ...

    def typecheck(self, expr: Node, scope: Scope) -> tuple[Any, list[Diagnostic]]: ...

    def evaluate(self, expr: Node, valuation: Mapping[str, Any]) -> Any: ...

    def is_true_literal(self, expr: Node) -> bool: ...

    def is_boolean(self, type_: Any) -> bool: ...

    def is_unknown(self, type_: Any) -> bool: ...

    def assign_target(self, name: str, scope: Scope):
        """Return the writable target's type, ``None`` if the name is not an
        output or variable, or ``AMBIGUOUS``."""
