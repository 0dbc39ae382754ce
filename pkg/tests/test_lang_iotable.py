"""I/O table language with a stub expression slot."""

from __future__ import annotations

import pytest

from langbench.kernel import ParseError, Scope, TokenStream
from langbench.lang_iotable import (StepError, check_iotable, define_iotable_symbols,
                                    parse_iotable, step_iotable)

from stub_slot import Boom, StubSlot

SLOT = StubSlot(inputs={"start": "int", "ready": "bool"},
                outputs={"alarm": "bool", "remaining": "int"})


def parse(text, slot=SLOT):
    ts = TokenStream.from_text(text)
    table = parse_iotable(ts, slot.parse)
    assert ts.at_end()
    return table


def codes(text, slot=SLOT):
    table = parse(text, slot)
    return [d.code for d in define_iotable_symbols(table, Scope(unit="u")) + check_iotable(table, slot)]


FOUR = """iotable {
  row [ready == true] / { remaining = start, alarm = false };
  row [remaining == 2] / { remaining = 1, alarm = false };
  row [remaining == 1] / { alarm = true, remaining = start };
  row [true] / { alarm = false };
}"""


def test_four_rows():
    table = parse(FOUR)
    assert len(table.rows) == 4 and [len(r.effects) for r in table.rows] == [2, 2, 2, 1]
    assert codes(FOUR) == []


def test_empty_effects():
    table = parse("iotable { row [true] / { }; }")
    assert len(table.rows) == 1 and table.rows[0].effects == []


def test_no_rows_is_a_check_error():
    assert parse("iotable { }").rows == []
    assert codes("iotable { }") == ["TBL0001"]


def test_rows_are_internal_entries():
    table = parse(FOUR)
    define_iotable_symbols(table, Scope(unit="u"))
    assert [e.name for e in table.scope.entries()] == ["row1", "row2", "row3", "row4"]
    assert not any(e.exported for e in table.scope.entries())


@pytest.mark.parametrize("text", ["iotable { row true / { }; }", "iotable { row [true] { }; }",
                                  "iotable { row [true] / { alarm }; }", "iotable { row [true] / { } }"])
def test_syntax_errors_are_claimed(text):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.code == "TBL0000"


@pytest.mark.parametrize("rows,expected", [
    ("row [start] / { alarm = true }; row [true] / { };", ["TBL0002"]),
    ("row [true] / { start = 1 };", ["TBL0003"]),
    ("row [true] / { alarm = 3 };", ["TBL0004"]),
    ("row [true] / { alarm = true, alarm = false };", ["TBL0005"]),
    ("row [ready] / { alarm = true };", ["TBL0006"]),
])
def test_check_codes(rows, expected):
    assert codes(f"iotable {{ {rows} }}") == expected


def test_step_first_matching_row():
    table = parse(FOUR)
    assert step_iotable(table, {"ready": True, "start": 3, "remaining": 0}, SLOT) == [
        ("remaining", 3), ("alarm", False)]
    assert step_iotable(table, {"ready": False, "start": 0, "remaining": 1}, SLOT) == [
        ("alarm", True), ("remaining", 0)]
    assert step_iotable(table, {"ready": False, "start": 0, "remaining": 7}, SLOT) == [("alarm", False)]


def test_all_false_rows_stutter():
    table = parse("iotable { row [false] / { alarm = true }; row [false] / { alarm = false }; }")
    assert step_iotable(table, {}, SLOT) == []


def test_failure_carries_row_span():
    table = parse("iotable {\n  row [false] / { };\n  row [boom] / { };\n}")
    with pytest.raises(StepError) as info:
        step_iotable(table, {}, SLOT)
    assert info.value.span.line == 3 and isinstance(info.value.cause, Boom)
