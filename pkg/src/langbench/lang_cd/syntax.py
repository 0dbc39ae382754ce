"""Class-diagram AST, parser and unparser."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..kernel import NO_SPAN, Diagnostic, Node, ParseError, Span, TokenStream, error
from ..kernel.lexer import IDENT

PRIMITIVES = ("int", "boolean", "double", "String")


@dataclass
class CDNode(Node):
    language = "cd"


@dataclass
class CDField(CDNode):
    type_name: str
    name: str
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


@dataclass
class CDClass(CDNode):
    name: str
    fields: list[CDField] = field(default_factory=list)
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


@dataclass
class EnumConstant(CDNode):
    name: str
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


@dataclass
class CDEnum(CDNode):
    name: str
    constants: list[EnumConstant] = field(default_factory=list)
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


@dataclass
class CDModel(CDNode):
    name: str
    elements: list[CDClass | CDEnum] = field(default_factory=list)
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


def parse_cd(text: str, filename: str = "<string>") -> tuple[CDModel | None, list[Diagnostic]]:
    diags: list[Diagnostic] = []
    try:
        ts = TokenStream.from_text(text, filename)
        ts.expect("classdiagram")
        name = ts.expect_ident("diagram name")
        ts.expect("{")
    except ParseError as exc:
        return None, [error("CD0000", exc.span, exc.message)]
    model = CDModel(name.text, span=name.span)
    while not ts.at("}") and not ts.at_end():
        start = ts.pos
        try:
            model.elements.append(_element(ts))
        except ParseError as exc:
            diags.append(error("CD0000", exc.span, exc.message))
            ts.recover_element(start)
            if ts.pos == start:
                ts.advance()
    try:
        ts.expect("}")
        if not ts.at_end():
            ts.fail("expected end of file")
    except ParseError as exc:
        diags.append(error("CD0000", exc.span, exc.message))
    return model, diags


def _element(ts: TokenStream) -> CDClass | CDEnum:
    if ts.accept("class"):
        name = ts.expect_ident("class name")
        node = CDClass(name.text, span=name.span)
        ts.expect("{")
        while not ts.at("}"):
            type_tok = ts.expect_ident("field type")
            fname = ts.expect_ident("field name")
            ts.expect(";")
            node.fields.append(CDField(type_tok.text, fname.text, span=fname.span))
        ts.expect("}")
        return node
    if ts.accept("enum"):
        name = ts.expect_ident("enum name")
        node = CDEnum(name.text, span=name.span)
        ts.expect("{")
        while True:
            const = ts.expect_kind(IDENT, "enum constant")
            node.constants.append(EnumConstant(const.text, span=const.span))
            if not ts.accept(","):
                break
        ts.expect(";")
        ts.expect("}")
        return node
    ts.fail("expected 'class' or 'enum'")


def unparse_cd(model: CDModel) -> str:
    lines = [f"classdiagram {model.name} {{"]
    for el in model.elements:
        if isinstance(el, CDEnum):
            consts = ", ".join(c.name for c in el.constants)
            lines.append(f"  enum {el.name} {{ {consts}; }}")
        else:
            lines.append(f"  class {el.name} {{")
            lines.extend(f"    {f.type_name} {f.name};" for f in el.fields)
            lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"
