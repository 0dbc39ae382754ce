"""Scenario CSV files: one row of main-component input values per tick."""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from ..family_maa import expr_type_of
from ..kernel import Span, SymbolEntry, Workbench, error
from ..lang_cd import CD_TYPE
from ..lang_expr import BOOL, DOUBLE, INT, STRING, EnumValue, ExprType
from .engine import Instance, SimulationError

_INT = re.compile(r"^[+-]?[0-9]+$")


@dataclass
class Scenario:
    header: list[str]
    rows: list[dict[str, Any]] = field(default_factory=list)
    path: str = "<scenario>"

    def inputs(self, ticks: int, repeat_last: bool = False) -> list[dict[str, Any]]:
        if ticks <= len(self.rows):
            return self.rows[:ticks]
        if not repeat_last or not self.rows:
            raise ValueError(f"scenario has {len(self.rows)} rows but {ticks} ticks were requested")
        return self.rows + [self.rows[-1]] * (ticks - len(self.rows))


def load_scenario(path: str | Path, main: Instance, wb: Workbench) -> Scenario:
    return parse_scenario(Path(path).read_text(encoding="utf-8"), main, wb, str(path))


def parse_scenario(text: str, main: Instance, wb: Workbench,
                   filename: str = "<scenario>") -> Scenario:
    reader = csv.reader(io.StringIO(text))
    lines = [row for row in reader if row]
    header = [h.strip() for h in lines[0]] if lines else []
    expected = [p.name for p in main.ports if p.direction == "in"]
    if sorted(header) != sorted(expected) or len(set(header)) != len(header):
        raise SimulationError(error("SIM0002", Span(filename, 1, 1),
                                    f"header {header} does not match input ports {expected}"))
    body = main.entry.members
    types = {p.name: expr_type_of(p.type_name, body, wb) for p in main.ports}
    scenario = Scenario(header, path=filename)
    for lineno, cells in enumerate(lines[1:], 2):
        if len(cells) != len(header):
            raise SimulationError(error("SIM0003", Span(filename, lineno, 1),
                                        f"expected {len(header)} values, got {len(cells)}"))
        row = {}
        for col, (name, cell) in enumerate(zip(header, cells), 1):
            try:
                row[name] = _parse_value(cell.strip(), types[name], wb)
            except ValueError as exc:
                raise SimulationError(error("SIM0003", Span(filename, lineno, col),
                                            f"{name}: {exc}")) from None
        scenario.rows.append(row)
    return scenario


def _parse_value(text: str, t: ExprType | None, wb: Workbench) -> Any:
    if t == BOOL:
        if text not in ("true", "false"):
            raise ValueError(f"'{text}' is not a boolean")
        return text == "true"
    if t == INT:
        if not _INT.match(text):
            raise ValueError(f"'{text}' is not an integer")
        return int(text)
    if t == STRING:
        return text
    if t == DOUBLE:
        return float(text)
    if t is not None and t.kind == "enum":
        enum_name = t.name.rpartition(".")[2]
        prefix, _, const = text.rpartition(".")
        entry = wb.resolve_global(t.name, CD_TYPE)
        if prefix != enum_name or not isinstance(entry, SymbolEntry) \
                or const not in entry.payload["constants"]:
            raise ValueError(f"'{text}' is not a constant of {enum_name}")
        return EnumValue(enum_name, const)
    raise ValueError(f"values of type {t} cannot be given in a scenario")
