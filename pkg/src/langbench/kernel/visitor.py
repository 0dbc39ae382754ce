"""AST node base class and composite visitors over heterogeneous trees."""

from __future__ import annotations

import dataclasses
from typing import ClassVar, Iterator, Mapping


class Node:
    """Base for AST nodes of every language.

    Subclasses are dataclasses and set ``language``.  ``children`` yields the
    child nodes in source order; the default walks dataclass fields, which is
    correct as long as fields are declared in source order.
    """

    language: ClassVar[str] = "?"

    def children(self) -> Iterator["Node"]:
        for f in dataclasses.fields(self):
            if not f.compare:
                continue
            value = getattr(self, f.name)
            if isinstance(value, Node):
                yield value
            elif isinstance(value, (list, tuple)):
                for item in value:
                    if isinstance(item, Node):
                        yield item


SKIP = object()


class Visitor:
    """Per-language visitor part: ``visit_<NodeClass>`` / ``leave_<NodeClass>``.

    Returning ``SKIP`` from a visit method prunes the subtree.
    """

    def visit(self, node: Node):
        method = getattr(self, "visit_" + type(node).__name__, None)
        if method is None:
            return self.generic_visit(node)
        return method(node)

    def leave(self, node: Node):
        method = getattr(self, "leave_" + type(node).__name__, None)
        if method is not None:
            method(node)

    def generic_visit(self, node: Node):
        return None


class SkipVisitor(Visitor):
    def generic_visit(self, node: Node):
        return SKIP


class TraversalError(Exception):
    pass


class CompositeVisitor:
    """Dispatches each node to the part registered for its language.

    Parts switch at embedding boundaries automatically since dispatch is per
    node.  ``visited`` counts nodes handed to a part.
    """

    def __init__(self, parts: Mapping[str, Visitor], default: Visitor | None = None):
        self.parts = dict(parts)
        self.default = default
        self.visited = 0

    def part_for(self, node: Node) -> Visitor:
        part = self.parts.get(node.language, self.default)
        if part is None:
            raise TraversalError(f"no visitor part for language '{node.language}'")
        return part

    def traverse(self, node: Node) -> None:
        part = self.part_for(node)
        self.visited += 1
        if part.visit(node) is SKIP:
            return
        for child in node.children():
            self.traverse(child)
        part.leave(node)


def compose_visitors(parts: Mapping[str, Visitor],
                     default: Visitor | None = None) -> CompositeVisitor:
    return CompositeVisitor(parts, default)
