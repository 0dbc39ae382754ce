"""I/O tables: ordered guard -> effects rows with first-match semantics."""

from ..kernel import register_codes
from .table import (ROW, Assignment, IOTable, Row, StepError, check_iotable,
                    define_iotable_symbols, parse_iotable, step_iotable)

LANGUAGE_ID = "iotable"

register_codes({
    "TBL0000": "I/O table syntax error",
    "TBL0001": "I/O table has no rows",
    "TBL0002": "row guard is not boolean",
    "TBL0003": "effect target is not an output port or variable",
    "TBL0004": "effect value has the wrong type",
    "TBL0005": "row assigns the same target twice",
    "TBL0006": "last row guard is not 'true'; table may be incomplete (warning)",
})

__all__ = [
    "Assignment", "IOTable", "LANGUAGE_ID", "ROW", "Row", "StepError",
    "check_iotable", "define_iotable_symbols", "parse_iotable", "step_iotable",
]
