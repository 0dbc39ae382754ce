"""Simulation traces and their CSV form."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Any

from ..kernel import Diagnostic
from ..lang_expr import EnumValue


@dataclass
class TraceRow:
    tick: int
    inputs: dict[str, Any]
    outputs: dict[str, Any]
    states: dict[str, str]


@dataclass
class Trace:
    inputs: list[str]
    outputs: list[str]
    automata: list[str]
    rows: list[TraceRow] = field(default_factory=list)
    error: Diagnostic | None = None
    error_tick: int | None = None

    @property
    def header(self) -> list[str]:
        return ["tick", *self.inputs, *self.outputs, *(f"{p}.state" for p in self.automata)]

    def column(self, name: str) -> list[Any]:
        if name.endswith(".state") and name[:-6] in self.automata:
            return [r.states[name[:-6]] for r in self.rows]
        if name in self.inputs:
            return [r.inputs[name] for r in self.rows]
        return [r.outputs[name] for r in self.rows]


def format_value(value: Any) -> str:
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, (int, str, EnumValue)):
        return str(value)
    # ABSENT (never written yet)
    return ""


def format_trace(trace: Trace) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(trace.header)
    for row in trace.rows:
        writer.writerow([row.tick,
                         *(format_value(row.inputs[n]) for n in trace.inputs),
                         *(format_value(row.outputs[n]) for n in trace.outputs),
                         *(row.states[p] for p in trace.automata)])
    if trace.error is not None:
        marker = [trace.error_tick, f"ERROR {trace.error.code}"]
        writer.writerow(marker + [""] * (len(trace.header) - len(marker)))
    return buf.getvalue()
