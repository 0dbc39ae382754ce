"""Component & connector AST and parser with extension points."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ..kernel import NO_SPAN, Diagnostic, Node, ParseError, Span, TokenStream, error

IN, OUT = "in", "out"


@dataclass
class ArcNode(Node):
    language = "arc"


@dataclass(frozen=True)
class Endpoint:
    subcomponent: str | None
    port: str

    def __str__(self) -> str:
        return f"{self.subcomponent}.{self.port}" if self.subcomponent else self.port


@dataclass
class Port(ArcNode):
    direction: str
    type_name: str
    name: str
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


@dataclass
class Subcomponent(ArcNode):
    type_name: str
    name: str
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


@dataclass
class Connector(ArcNode):
    source: Endpoint
    target: Endpoint
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


@dataclass
class ComponentType(ArcNode):
    name: str
    imports: list[str] = field(default_factory=list)
    # ports, subcomponents, connectors and extension elements in source order
    elements: list[Node] = field(default_factory=list)
    span: Span = field(default=NO_SPAN, compare=False, repr=False)

    @property
    def ports(self) -> list[Port]:
        return [e for e in self.elements if isinstance(e, Port)]

    @property
    def subcomponents(self) -> list[Subcomponent]:
        return [e for e in self.elements if isinstance(e, Subcomponent)]

    @property
    def connectors(self) -> list[Connector]:
        return [e for e in self.elements if isinstance(e, Connector)]

    @property
    def extensions(self) -> list[Node]:
        return [e for e in self.elements if not isinstance(e, ArcNode)]

    @property
    def decomposed(self) -> bool:
        return bool(self.subcomponents)


ElementParser = Callable[[TokenStream], Node]


@dataclass
class ExtensionPoint:
    """Hooks for languages that build on this one.

    ``elements`` adds body elements by leading keyword (inheritance);
    ``behavior`` binds embedded behavior languages by keyword (embedding).
    Both parsers receive the stream positioned on their keyword.
    """

    elements: dict[str, ElementParser] = field(default_factory=dict)
    behavior: dict[str, ElementParser] = field(default_factory=dict)

    def parser_for(self, keyword: str) -> ElementParser | None:
        return self.elements.get(keyword) or self.behavior.get(keyword)


NO_EXTENSIONS = ExtensionPoint()


def parse_arc(text: str, filename: str = "<string>",
              extensions: ExtensionPoint = NO_EXTENSIONS
              ) -> tuple[ComponentType | None, list[Diagnostic]]:
    diags: list[Diagnostic] = []
    try:
        ts = TokenStream.from_text(text, filename)
        imports = []
        while ts.accept("import"):
            name, _ = ts.qualified_name()
            if ts.accept("."):
                ts.expect("*")
                name += ".*"
            ts.expect(";")
            imports.append(name)
        ts.expect("component")
        name = ts.expect_ident("component name")
    except ParseError as exc:
        return None, [error(exc.code or "ARC0000", exc.span, exc.message)]
    comp = ComponentType(name.text, imports, span=name.span)
    try:
        if ts.accept("{"):
            while not ts.at("}") and not ts.at_end():
                start = ts.pos
                try:
                    comp.elements.extend(_element(ts, extensions))
                except ParseError as exc:
                    diags.append(error(exc.code or "ARC0000", exc.span, exc.message))
                    ts.recover_element(start)
                    if ts.pos == start:
                        ts.advance()
            ts.expect("}")
        if not ts.at_end():
            ts.fail("expected end of file")
    except ParseError as exc:
        diags.append(error(exc.code or "ARC0000", exc.span, exc.message))
    return comp, diags


def _element(ts: TokenStream, extensions: ExtensionPoint) -> list[Node]:
    if ts.accept("port"):
        ports = []
        while True:
            direction = ts.current
            if not (ts.at(IN) or ts.at(OUT)):
                ts.fail("expected 'in' or 'out'")
            ts.advance()
            type_name, _ = ts.qualified_name()
            pname = ts.expect_ident("port name")
            ports.append(Port(direction.text, type_name, pname.text, span=pname.span))
            if not ts.accept(","):
                break
        ts.expect(";")
        return ports
    if ts.accept("component"):
        type_name, _ = ts.qualified_name()
        inst = ts.expect_ident("instance name")
        ts.expect(";")
        return [Subcomponent(type_name, inst.text, span=inst.span)]
    if ts.at("connect"):
        kw = ts.advance()
        source = _endpoint(ts)
        ts.expect("->")
        target = _endpoint(ts)
        ts.expect(";")
        return [Connector(source, target, span=kw.span)]
    parser = extensions.parser_for(ts.current.text) if ts.at_kind("IDENT") else None
    if parser is None:
        ts.fail("expected 'port', 'component' or 'connect'")
    return [parser(ts)]


def _endpoint(ts: TokenStream) -> Endpoint:
    first = ts.expect_ident("port name")
    if ts.accept("."):
        port = ts.expect_ident("port name")
        return Endpoint(first.text, port.text)
    return Endpoint(None, first.text)
