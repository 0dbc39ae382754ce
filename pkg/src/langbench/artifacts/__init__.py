"""Generation back-ends: architecture diagrams and a JSON IR."""

from importlib import resources

from .dot import emit_dot
from .ir import IR_VERSION, build_ir, dump_ir, emit_ir


def ir_schema_text() -> str:
    return resources.files(__package__).joinpath("ir_schema.json").read_text(encoding="utf-8")


__all__ = ["IR_VERSION", "build_ir", "dump_ir", "emit_dot", "emit_ir", "ir_schema_text"]
