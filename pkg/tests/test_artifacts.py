"""DOT and IR back-ends."""

from __future__ import annotations

import copy
import json
import re

import jsonschema
import pytest

from langbench.artifacts import build_ir, dump_ir, emit_dot, emit_ir, ir_schema_text
from langbench.kernel import Node, Workbench

from conftest import MODELS, family_workbench, write_models

SCHEMA = json.loads(ir_schema_text())


def ast_size(wb):
    memo = {}
    copy.deepcopy([u.ast for u in wb.units.values()], memo)
    return sum(isinstance(v, Node) for v in memo.values())


def dot_counts(text):
    """(clusters, instance nodes, edges)"""
    return (len(re.findall(r'^\s*subgraph "cluster_', text, re.M)),
            len(re.findall(r'^\s*"[^"]+" \[label=', text, re.M)),
            len(re.findall(r'^\s*"[^"]+" -> "[^"]+"', text, re.M)))


def test_bumper_bot_diagram(corpus_wb):
    text = emit_dot("demo.BumperBot", corpus_wb)
    assert dot_counts(text) == (1, 2, 4)
    assert '"root.control" [label="control: BumpControl"];' in text
    assert '"root.control" -> "root.timer" [label="start -> start"];' in text
    # automaton internals never leak into the architecture view
    assert "Driving" not in text


def test_atomic_main_diagram(corpus_wb):
    text = emit_dot("demo.Timer", corpus_wb)
    assert dot_counts(text) == (0, 1, 0)


def test_nested_decomposition(tmp_path):
    wb, diags = family_workbench(write_models(tmp_path, {
        "p/Src.maa": "component Src {\n  port out int y;\n  iotable { row [true] / { y = 1 }; }\n}\n",
        "p/Mid.maa": "component Mid {\n  port out int y;\n  component Src s;\n  connect s.y -> y;\n}\n",
        "p/Top.maa": "component Top {\n  port out int y;\n  component Mid m;\n  connect m.y -> y;\n}\n"}))
    assert diags == []
    text = emit_dot("p.Top", wb)
    assert dot_counts(text) == (2, 1, 2)
    assert '"root.m.y" -> "root.y"' in text and '"root.m.s" -> "root.m.y"' in text


def test_dot_is_deterministic(corpus_wb):
    assert emit_dot("demo.BumperBot", corpus_wb) == emit_dot("demo.BumperBot", family_workbench(MODELS)[0])


def test_dot_unknown_main(corpus_wb):
    with pytest.raises(LookupError):
        emit_dot("demo.Nope", corpus_wb)


def test_ir_corpus_structure(corpus_wb):
    doc, visited = build_ir(corpus_wb)
    jsonschema.validate(doc, SCHEMA)
    assert [(t["name"], t["kind"]) for t in doc["types"]] == [("demo.Types.MotorCmd", "enum")]
    comps = {c["name"]: c for c in doc["components"]}
    assert sorted(comps) == ["demo.BumpControl", "demo.BumperBot", "demo.Timer"]
    aut = comps["demo.BumpControl"]["behavior"]
    table = comps["demo.Timer"]["behavior"]
    assert aut["kind"] == "automaton" and len(aut["transitions"]) == 3
    assert table["kind"] == "iotable" and len(table["rows"]) == 4
    assert comps["demo.BumperBot"]["behavior"] is None
    assert visited == ast_size(corpus_wb)


def test_ir_references_are_qualified(corpus_wb):
    doc, _ = build_ir(corpus_wb)
    comps = {c["name"]: c for c in doc["components"]}
    control = comps["demo.BumpControl"]
    assert {p["name"]: p["type"] for p in control["ports"]}["motor"] == "demo.Types.MotorCmd"
    assert control["behavior"]["transitions"][0]["guard"] == ["==", ["name", "bumper"], ["bool", True]]
    assert control["behavior"]["initial"]["actions"][0]["value"] == ["enum", "demo.Types.MotorCmd.FORWARD"]
    assert {s["name"]: s["type"] for s in comps["demo.BumperBot"]["subcomponents"]} == {
        "control": "demo.BumpControl", "timer": "demo.Timer"}
    connectors = comps["demo.BumperBot"]["connectors"]
    assert connectors == sorted(connectors, key=lambda c: (c["source"], c["target"]))


def test_adapted_types_are_not_redefined(corpus_wb):
    doc, _ = build_ir(corpus_wb)
    assert [t["name"] for t in doc["types"]] == ["demo.Types.MotorCmd"]
    assert all("MotorCmd" not in c["name"] for c in doc["components"])


def test_empty_registry():
    text = emit_ir(Workbench())
    doc = json.loads(text)
    jsonschema.validate(doc, SCHEMA)
    assert doc == {"components": [], "types": [], "version": "1"}


def test_ir_roundtrip_and_determinism(corpus_wb):
    text = emit_ir(corpus_wb)
    assert dump_ir(json.loads(text)) == text
    assert emit_ir(family_workbench(MODELS)[0]) == text


def test_ir_covers_variables_and_classes(tmp_path):
    wb, diags = family_workbench(write_models(tmp_path, {
        "p/Geo.cd": "classdiagram Geo { class Point { int x; Point next; } }",
        "p/A.maa": "component A {\n  port in Point p, out int y;\n  variable int v = -(1 + 2);\n"
                   "  iotable { row [!(p.x > v)] / { y = p.x % 3 }; row [true] / { }; }\n}\n"}))
    assert diags == []
    doc, visited = build_ir(wb)
    jsonschema.validate(doc, SCHEMA)
    assert visited == ast_size(wb)
    (point,) = doc["types"]
    assert point["members"] == [{"name": "x", "type": "int"}, {"name": "next", "type": "p.Geo.Point"}]
    (comp,) = doc["components"]
    assert comp["variables"] == [{"name": "v", "type": "int",
                                  "initial": ["-", ["+", ["int", 1], ["int", 2]]]}]
    row = comp["behavior"]["rows"][0]
    assert row["guard"] == ["!", [">", [".", ["name", "p"], "x"], ["name", "v"]]]
    assert comp["behavior"]["rows"][1]["effects"] == []
