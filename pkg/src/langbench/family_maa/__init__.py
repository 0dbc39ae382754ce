"""The "maa" family: arc extended with variables and embedded behavior,
class-diagram types aggregated through adapters."""

from .family import (EXPR_NAME, LANGUAGE_ID, VARIABLE, FamilyConfiguration,
                     FamilySlot, Variable, behavior_of, check_family,
                     define_family_symbols, expr_type_of, parse_variable,
                     register_family)

__all__ = [
    "EXPR_NAME", "FamilyConfiguration", "FamilySlot", "LANGUAGE_ID", "VARIABLE",
    "Variable", "behavior_of", "check_family", "define_family_symbols",
    "expr_type_of", "parse_variable", "register_family",
]
