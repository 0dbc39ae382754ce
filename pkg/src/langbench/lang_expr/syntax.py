"""Expression AST, precedence-climbing parser and printer."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..kernel import NO_SPAN, Node, ParseError, Span, TokenStream
from ..kernel.lexer import IDENT, INT, STRING, quote, unquote

# loosest first; every level but ``implies`` is left-associative
BINARY_LEVELS: tuple[tuple[str, ...], ...] = (
    ("implies",),
    ("||",),
    ("&&",),
    ("==", "!="),
    ("<", "<=", ">", ">="),
    ("+", "-"),
    ("*", "/", "%"),
)
RIGHT_ASSOCIATIVE = {"implies"}
RESERVED = {"true", "false", "implies"}


@dataclass
class Expr(Node):
    language = "expr"


@dataclass
class IntLit(Expr):
    value: int
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


@dataclass
class BoolLit(Expr):
    value: bool
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


@dataclass
class StringLit(Expr):
    value: str
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


@dataclass
class EnumLit(Expr):
    enum: str
    constant: str
    span: Span = field(default=NO_SPAN, compare=False, repr=False)

    @property
    def qualified(self) -> str:
        return f"{self.enum}.{self.constant}"


@dataclass
class NameRef(Expr):
    name: str
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


@dataclass
class FieldAccess(Expr):
    base: Expr
    field: str
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


@dataclass
class Unary(Expr):
    op: str
    operand: Expr
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


@dataclass
class Binary(Expr):
    op: str
    left: Expr
    right: Expr
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


def parse_expr(source: str | TokenStream, filename: str = "<expr>") -> Expr:
    """Parse one expression.

    Given a TokenStream (the embedded case) it consumes exactly one
    expression and leaves the cursor on the following token; given text it
    requires the whole text to be one expression.
    """
    if isinstance(source, TokenStream):
        return _binary(source, 0)
    ts = TokenStream.from_text(source, filename)
    e = _binary(ts, 0)
    if not ts.at_end():
        ts.fail("unexpected token after expression")
    return e


def _binary(ts: TokenStream, level: int) -> Expr:
    if level == len(BINARY_LEVELS):
        return _unary(ts)
    ops = BINARY_LEVELS[level]
    left = _binary(ts, level + 1)
    if ops[0] in RIGHT_ASSOCIATIVE:
        if ts.current.text in ops and ts.current.kind == IDENT:
            tok = ts.advance()
            right = _binary(ts, level)
            return Binary(tok.text, left, right, span=tok.span)
        return left
    while ts.current.text in ops and ts.current.kind != STRING:
        tok = ts.advance()
        right = _binary(ts, level + 1)
        left = Binary(tok.text, left, right, span=tok.span)
    return left


def _unary(ts: TokenStream) -> Expr:
    if ts.at("!") or ts.at("-"):
        tok = ts.advance()
        return Unary(tok.text, _unary(ts), span=tok.span)
    return _primary(ts)


def _primary(ts: TokenStream) -> Expr:
    tok = ts.current
    if tok.kind == INT:
        ts.advance()
        return IntLit(int(tok.text), span=tok.span)
    if tok.kind == STRING:
        ts.advance()
        return StringLit(unquote(tok.text), span=tok.span)
    if ts.accept("("):
        e = _binary(ts, 0)
        ts.expect(")")
        return e
    if tok.kind == IDENT:
        if tok.text in ("true", "false"):
            ts.advance()
            return BoolLit(tok.text == "true", span=tok.span)
        if tok.text in RESERVED:
            ts.fail("expected expression")
        ts.advance()
        if ts.at(".") and ts.peek().kind == IDENT:
            ts.advance()
            member = ts.advance()
            if ts.at("."):
                raise ParseError(ts.current.span, "only one member access is allowed")
            # capitalised prefix names an enumeration; anything else is a value
            if tok.text[0].isupper():
                return EnumLit(tok.text, member.text, span=tok.span)
            return FieldAccess(NameRef(tok.text, span=tok.span), member.text, span=member.span)
        return NameRef(tok.text, span=tok.span)
    ts.fail("expected expression")


def print_expr(e: Expr) -> str:
    if isinstance(e, IntLit):
        return str(e.value)
    if isinstance(e, BoolLit):
        return "true" if e.value else "false"
    if isinstance(e, StringLit):
        return quote(e.value)
    if isinstance(e, EnumLit):
        return e.qualified
    if isinstance(e, NameRef):
        return e.name
    if isinstance(e, FieldAccess):
        return f"{print_expr(e.base)}.{e.field}"
    if isinstance(e, Unary):
        inner = print_expr(e.operand)
        if isinstance(e.operand, Binary):
            inner = f"({inner})"
        return f"{e.op}{inner}"
    if isinstance(e, Binary):
        return f"({print_expr(e.left)} {e.op} {print_expr(e.right)})"
    raise TypeError(f"not an expression: {e!r}")
