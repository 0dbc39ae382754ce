"""Language-independent framework: entries, scopes, resolution, workflows, visitors."""

from .diagnostics import (CODES, NO_SPAN, ConfigurationError, Diagnostic,
                          EvaluationFailure, Severity, Span, error, has_errors,
                          register_codes, sort_diagnostics, warning)
from .embedding import ExpressionSlot
from .lexer import ParseError, Token, TokenStream, tokenize
from .symbols import EntryKind, Scope, SymbolEntry, Visibility
from .visitor import (SKIP, CompositeVisitor, Node, SkipVisitor, TraversalError,
                      Visitor, compose_visitors)
from .workbench import (AMBIGUOUS, NOT_FOUND, AdapterRegistration,
                        LanguageDescriptor, ModelUnit, Phase, Workbench, Workflow)

__all__ = [
    "AMBIGUOUS", "CODES", "NOT_FOUND", "NO_SPAN", "SKIP", "AdapterRegistration",
    "CompositeVisitor", "ConfigurationError", "Diagnostic", "EntryKind",
    "EvaluationFailure", "ExpressionSlot", "LanguageDescriptor", "ModelUnit",
    "Node", "ParseError", "Phase", "Scope", "Severity", "SkipVisitor", "Span",
    "SymbolEntry", "Token", "TokenStream", "TraversalError", "Visibility",
    "Visitor", "Workbench", "Workflow", "compose_visitors", "error",
    "has_errors", "register_codes", "sort_diagnostics", "tokenize", "warning",
]
