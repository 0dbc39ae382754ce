"""Time-synchronous simulation of checked architectures with unit-delay connectors."""

from ..kernel import register_codes
from .engine import (ABSENT, AbsentRead, Instance, SimulationError, Simulator,
                     SystemState, instantiate)
from .scenario import Scenario, load_scenario, parse_scenario
from .trace import Trace, TraceRow, format_trace, format_value

register_codes({
    "SIM0001": "atomic component instance has no behavior",
    "SIM0002": "scenario header does not match the main component's input ports",
    "SIM0003": "scenario value does not parse as the port's type",
    "SIM0004": "read of an absent port value",
    "SIM0005": "division by zero during simulation",
})

__all__ = [
    "ABSENT", "AbsentRead", "Instance", "Scenario", "SimulationError",
    "Simulator", "SystemState", "Trace", "TraceRow", "format_trace",
    "format_value", "instantiate", "load_scenario", "parse_scenario",
]
