"""Class-diagram type language: classes with typed fields and enumerations."""

from ..kernel import LanguageDescriptor, Phase, Workflow, register_codes
from .semantics import CD_ENUM_CONSTANT, CD_FIELD, CD_TYPE, check_cd, define_cd_symbols
from .syntax import (PRIMITIVES, CDClass, CDEnum, CDField, CDModel, EnumConstant,
                     parse_cd, unparse_cd)

LANGUAGE_ID = "cd"
EXTENSION = ".cd"

register_codes({
    "CD0000": "class diagram syntax error",
    "CD0001": "duplicate type name in class diagram",
    "CD0002": "unknown field type",
    "CD0003": "duplicate field name in class",
    "CD0004": "duplicate enum constant",
})


def descriptor() -> LanguageDescriptor:
    return LanguageDescriptor(LANGUAGE_ID, EXTENSION, parse_cd, [
        Workflow("cd-define", Phase.DEFINE, define_cd_symbols),
        Workflow("cd-check", Phase.CHECK, check_cd),
    ])


__all__ = [
    "CD_ENUM_CONSTANT", "CD_FIELD", "CD_TYPE", "CDClass", "CDEnum", "CDField",
    "CDModel", "EXTENSION", "EnumConstant", "LANGUAGE_ID", "PRIMITIVES",
    "check_cd", "define_cd_symbols", "descriptor", "parse_cd", "unparse_cd",
]
