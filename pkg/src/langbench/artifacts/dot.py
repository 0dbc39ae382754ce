"""Architecture diagrams in Graphviz DOT, produced by a composite visitor."""

from __future__ import annotations

from .. import lang_arc
from ..kernel import SKIP, SkipVisitor, SymbolEntry, Visitor, Workbench, compose_visitors
from ..lang_arc import COMPONENT, ComponentType


def _q(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


class _ArcPart(Visitor):
    def __init__(self, gen: "_DotGenerator"):
        self.gen = gen

    def visit_ComponentType(self, node: ComponentType):
        g = self.gen
        path, entry = g.context[-1]
        name = path.rpartition(".")[2]
        if not node.decomposed:
            g.line(f"{_q(path)} [label={_q(f'{name}: {node.name}')}];")
            return SKIP
        g.line(f"subgraph {_q('cluster_' + path)} {{")
        g.depth += 1
        g.line(f"label={_q(f'{name}: {node.name}')};")
        return None

    def leave_ComponentType(self, node: ComponentType):
        g = self.gen
        g.depth -= 1
        g.line("}")

    def visit_Port(self, node: lang_arc.Port):
        path, _ = self.gen.context[-1]
        self.gen.line(f"{_q(path + '.' + node.name)} [shape=point, xlabel={_q(node.name)}];")

    def visit_Subcomponent(self, node: lang_arc.Subcomponent):
        g = self.gen
        path, entry = g.context[-1]
        sub = entry.members.local(node.name, lang_arc.SUBCOMPONENT)
        ctype = lang_arc.resolve_subcomponent_type(sub, g.wb)
        g.context.append((f"{path}.{node.name}", ctype))
        g.visitor.traverse(ctype.payload["node"])
        g.context.pop()
        return SKIP

    def visit_Connector(self, node: lang_arc.Connector):
        g = self.gen
        path, entry = g.context[-1]
        src = g.endpoint_id(path, entry, node.source)
        tgt = g.endpoint_id(path, entry, node.target)
        label = f"{node.source.port} -> {node.target.port}"
        g.line(f"{_q(src)} -> {_q(tgt)} [label={_q(label)}];")


class _MaaPart(SkipVisitor):
    """Variables and behavior are not part of the architecture view."""


class _DotGenerator:
    def __init__(self, wb: Workbench):
        self.wb = wb
        self.lines: list[str] = []
        self.depth = 1
        self.context: list[tuple[str, SymbolEntry]] = []
        self.visitor = compose_visitors({"arc": _ArcPart(self), "maa": _MaaPart()},
                                        default=SkipVisitor())

    def line(self, text: str) -> None:
        self.lines.append("  " * self.depth + text)

    def endpoint_id(self, path: str, entry: SymbolEntry, ep: lang_arc.Endpoint) -> str:
        if ep.subcomponent is None:
            return f"{path}.{ep.port}"
        sub = entry.members.local(ep.subcomponent, lang_arc.SUBCOMPONENT)
        ctype = lang_arc.resolve_subcomponent_type(sub, self.wb)
        sub_path = f"{path}.{ep.subcomponent}"
        if ctype.payload["node"].decomposed:
            return f"{sub_path}.{ep.port}"
        return sub_path


def emit_dot(main: str, wb: Workbench) -> str:
    entry = wb.resolve_global(main, COMPONENT)
    if not isinstance(entry, SymbolEntry):
        raise LookupError(f"main component '{main}' not found")
    gen = _DotGenerator(wb)
    gen.context.append(("root", entry))
    gen.visitor.traverse(entry.payload["node"])
    head = [f"digraph {_q(main)} {{", "  node [shape=box];"]
    return "\n".join(head + gen.lines + ["}"]) + "\n"
