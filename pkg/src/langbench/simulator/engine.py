"""Instance trees and the propagate / compute / commit tick."""

from __future__ import annotations

import copy
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator, Sequence

from .. import lang_arc
from ..family_maa import FamilySlot, behavior_of
from ..family_maa.family import variables_of
from ..kernel import (Diagnostic, EvaluationFailure, Span, SymbolEntry,
                      Workbench, error)
from ..lang_arc import COMPONENT, IN, OUT, ComponentType
from ..lang_automaton import Automaton
from ..lang_automaton import StepError as AutomatonStepError
from ..lang_automaton import initial_effects, step_automaton
from ..lang_expr import DivisionByZero
from ..lang_iotable import IOTable
from ..lang_iotable import StepError as TableStepError
from ..lang_iotable import step_iotable
from .trace import Trace, TraceRow

ROOT = "root"


class _Absent:
    def __repr__(self) -> str:
        return "ABSENT"


ABSENT = _Absent()


class AbsentRead(EvaluationFailure):
    def __init__(self, name: str):
        super().__init__(f"'{name}' has no value yet")
        self.name = name


class SimulationError(Exception):
    def __init__(self, diagnostic: Diagnostic):
        super().__init__(diagnostic.format())
        self.diagnostic = diagnostic


@dataclass(eq=False)
class Instance:
    path: str
    component: ComponentType
    entry: SymbolEntry
    children: list["Instance"] = field(default_factory=list)
    behavior: Automaton | IOTable | None = None
    slot: FamilySlot | None = None

    @property
    def atomic(self) -> bool:
        return not self.children

    @property
    def ports(self) -> list[lang_arc.Port]:
        return self.component.ports

    def walk(self) -> Iterator["Instance"]:
        yield self
        for c in self.children:
            yield from c.walk()


def instantiate(main: str, wb: Workbench) -> Instance:
    entry = wb.resolve_global(main, COMPONENT)
    if not isinstance(entry, SymbolEntry):
        raise LookupError(f"main component '{main}' not found")
    return _instantiate(ROOT, entry, wb)


def _instantiate(path: str, entry: SymbolEntry, wb: Workbench) -> Instance:
    comp: ComponentType = entry.payload["node"]
    inst = Instance(path, comp, entry)
    for sub in comp.subcomponents:
        se = entry.members.local(sub.name, lang_arc.SUBCOMPONENT)
        ctype = lang_arc.resolve_subcomponent_type(se, wb)
        inst.children.append(_instantiate(f"{path}.{sub.name}", ctype, wb))
    if inst.atomic:
        behaviors = behavior_of(comp)
        if not behaviors:
            raise SimulationError(error("SIM0001", comp.span,
                                        f"instance '{path}' of '{comp.name}' has no behavior"))
        inst.behavior = behaviors[0]
        inst.slot = FamilySlot(wb, entry.members)
    return inst


PortRef = tuple[str, str]


@dataclass
class SystemState:
    ports: dict[PortRef, Any]
    variables: dict[str, dict[str, Any]]
    states: dict[str, str]

    def copy(self) -> "SystemState":
        return SystemState(dict(self.ports), copy.deepcopy(self.variables), dict(self.states))


class _Valuation(Mapping):
    """Read view of one instance: its ports and variables; ABSENT reads fail."""

    def __init__(self, ports: dict[str, Any], variables: dict[str, Any]):
        self._values = {**ports, **variables}

    def __getitem__(self, name: str) -> Any:
        value = self._values[name]
        if value is ABSENT:
            raise AbsentRead(name)
        return value

    def __iter__(self):
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)


class Simulator:
    def __init__(self, root: Instance):
        self.root = root
        self.instances = {i.path: i for i in root.walk()}
        self.atomics = [i for i in root.walk() if i.atomic]
        self.main_inputs = [p.name for p in root.ports if p.direction == IN]
        self.main_outputs = [p.name for p in root.ports if p.direction == OUT]
        # target port -> the port feeding it
        self.driver: dict[PortRef, PortRef] = {}
        for inst in root.walk():
            for con in inst.component.connectors:
                self.driver[self._ref(inst, con.target)] = self._ref(inst, con.source)

    @staticmethod
    def _ref(inst: Instance, ep: lang_arc.Endpoint) -> PortRef:
        path = inst.path if ep.subcomponent is None else f"{inst.path}.{ep.subcomponent}"
        return (path, ep.port)

    @property
    def automaton_paths(self) -> list[str]:
        return sorted(i.path for i in self.atomics if isinstance(i.behavior, Automaton))

    def _port_values(self, state: SystemState, inst: Instance) -> dict[str, Any]:
        return {p.name: state.ports[(inst.path, p.name)] for p in inst.ports}

    def initial_state(self) -> SystemState:
        """Values at tick -1: variable initials and initial automaton outputs."""
        state = SystemState({}, {}, {})
        for inst in self.root.walk():
            for p in inst.ports:
                state.ports[(inst.path, p.name)] = ABSENT
        for inst in self.atomics:
            variables: dict[str, Any] = {}
            for var in variables_of(inst.component):
                valuation = _Valuation(self._port_values(state, inst), variables)
                try:
                    variables[var.name] = inst.slot.evaluate(var.initial, valuation)
                except EvaluationFailure as exc:
                    raise self._failure(var.span, exc) from exc
            state.variables[inst.path] = variables
            if isinstance(inst.behavior, Automaton):
                state.states[inst.path] = inst.behavior.initial.state
                valuation = _Valuation(self._port_values(state, inst), variables)
                try:
                    effects = initial_effects(inst.behavior, valuation, inst.slot)
                except AutomatonStepError as exc:
                    raise self._failure(exc.span, exc.cause) from exc
                self._apply(state, inst, effects)
        return state

    def _apply(self, state: SystemState, inst: Instance, effects) -> None:
        variables = state.variables[inst.path]
        for target, value in effects:
            if target in variables:
                variables[target] = value
            else:
                state.ports[(inst.path, target)] = value

    def _failure(self, span: Span, cause: EvaluationFailure) -> SimulationError:
        if isinstance(cause, DivisionByZero):
            return SimulationError(error("SIM0005", span, str(cause)))
        return SimulationError(error("SIM0004", span, str(cause)))

    def tick(self, state: SystemState, env: Mapping[str, Any],
             order: Sequence[str] | None = None) -> tuple[SystemState, dict[str, Any]]:
        missing = [n for n in self.main_inputs if n not in env]
        if missing:
            raise SimulationError(error("SIM0002", self.root.component.span,
                                        f"no value for input port(s) {', '.join(missing)}"))
        new = state.copy()

        # PROPAGATE: connectors carry last tick's committed outputs (or this tick's env)
        for name in self.main_inputs:
            new.ports[(ROOT, name)] = env[name]

        def feed(ref: PortRef):
            path, _ = ref
            if path == ROOT and ref[1] in env:
                return env[ref[1]]
            if self.instances[path].atomic:
                return state.ports[ref]
            src = self.driver.get(ref)
            return state.ports[ref] if src is None else feed(src)

        for target, source in self.driver.items():
            new.ports[target] = feed(source)

        # COMPUTE against the propagated values; COMMIT afterwards
        atomics = self.atomics if order is None else [self.instances[p] for p in order]
        pending = []
        for inst in atomics:
            valuation = _Valuation(self._port_values(new, inst), new.variables[inst.path])
            try:
                if isinstance(inst.behavior, Automaton):
                    nxt, effects = step_automaton(inst.behavior, new.states[inst.path],
                                                  valuation, inst.slot)
                else:
                    nxt, effects = None, step_iotable(inst.behavior, valuation, inst.slot)
            except (AutomatonStepError, TableStepError) as exc:
                raise self._failure(exc.span, exc.cause) from exc
            pending.append((inst, nxt, effects))

        for inst, nxt, effects in pending:
            if nxt is not None:
                new.states[inst.path] = nxt
            self._apply(new, inst, effects)

        outputs = {name: new.ports[(ROOT, name)] for name in self.main_outputs}
        return new, outputs

    def run(self, inputs: Sequence[Mapping[str, Any]], ticks: int,
            schedule: Callable[[list[str]], Sequence[str]] | None = None) -> Trace:
        """Run ``ticks`` ticks; on a simulation error the partial trace carries it."""
        trace = Trace(self.main_inputs, self.main_outputs, self.automaton_paths)
        try:
            state = self.initial_state()
        except SimulationError as exc:
            trace.error = exc.diagnostic
            trace.error_tick = 0
            return trace
        paths = [i.path for i in self.atomics]
        for t in range(ticks):
            env = inputs[t]
            order = list(schedule(list(paths))) if schedule else None
            try:
                state, outputs = self.tick(state, env, order)
            except SimulationError as exc:
                trace.error = exc.diagnostic
                trace.error_tick = t
                break
            trace.rows.append(TraceRow(t, {n: env[n] for n in self.main_inputs}, outputs,
                                       {p: state.states[p] for p in trace.automata}))
        return trace
