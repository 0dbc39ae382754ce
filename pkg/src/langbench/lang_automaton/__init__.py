"""I/O automata embedded as component behavior: states, initial outputs, guarded transitions."""

from ..kernel import register_codes
from .automaton import (STATE, Assignment, Automaton, Initial, StateDecl,
                        StepError, Transition, check_automaton,
                        define_automaton_symbols, initial_effects,
                        parse_automaton, step_automaton)

LANGUAGE_ID = "automaton"

register_codes({
    "AUT0000": "automaton syntax error",
    "AUT0001": "duplicate state name",
    "AUT0002": "initial state is not declared",
    "AUT0003": "automaton needs exactly one initial clause",
    "AUT0004": "transition refers to an undeclared state",
    "AUT0005": "transition guard is not boolean",
    "AUT0006": "assignment target is not an output port or variable",
    "AUT0007": "assigned value has the wrong type",
    "AUT0008": "transitions from one state overlap unconditionally (warning)",
})

__all__ = [
    "Assignment", "Automaton", "Initial", "LANGUAGE_ID", "STATE", "StateDecl",
    "StepError", "Transition", "check_automaton", "define_automaton_symbols",
    "initial_effects", "parse_automaton", "step_automaton",
]
