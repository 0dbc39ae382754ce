"""Component & connector architecture language with extension points."""

from ..kernel import LanguageDescriptor, Phase, Workflow, register_codes
from .semantics import (ARCD_TYPE, COMPONENT, PORT, PRIMITIVES, SUBCOMPONENT,
                        check_arc, component_entry, define_arc_symbols,
                        resolve_endpoint, resolve_port_type,
                        resolve_subcomponent_type)
from .syntax import (IN, NO_EXTENSIONS, OUT, ComponentType, Connector, Endpoint,
                     ExtensionPoint, Port, Subcomponent, parse_arc)

LANGUAGE_ID = "arc"
EXTENSION = ".arc"

register_codes({
    "ARC0000": "architecture syntax error",
    "ARC0001": "duplicate port name",
    "ARC0002": "duplicate subcomponent name",
    "ARC0003": "unresolved port type",
    "ARC0004": "unresolved subcomponent type",
    "ARC0005": "connector endpoint does not exist",
    "ARC0006": "connector violates port directions",
    "ARC0007": "port has more than one incoming connector",
    "ARC0008": "cyclic component instantiation",
    "ARC0009": "unconnected subcomponent input port (warning)",
})

DEFINE = Workflow("arc-define", Phase.DEFINE, define_arc_symbols)
CHECK = Workflow("arc-check", Phase.CHECK, check_arc)


def descriptor(extensions: ExtensionPoint = NO_EXTENSIONS, language_id: str = LANGUAGE_ID,
               extension: str = EXTENSION, extra_workflows=()) -> LanguageDescriptor:
    """Descriptor for plain ``.arc`` files, or for a language extending this one."""
    def parse(text, filename):
        return parse_arc(text, filename, extensions)
    return LanguageDescriptor(language_id, extension, parse,
                              [DEFINE, CHECK, *extra_workflows])


__all__ = [
    "ARCD_TYPE", "COMPONENT", "CHECK", "ComponentType", "Connector", "DEFINE",
    "EXTENSION", "Endpoint", "ExtensionPoint", "IN", "LANGUAGE_ID",
    "NO_EXTENSIONS", "OUT", "PORT", "PRIMITIVES", "Port", "SUBCOMPONENT",
    "Subcomponent", "check_arc", "component_entry", "define_arc_symbols",
    "descriptor", "parse_arc", "resolve_endpoint", "resolve_port_type",
    "resolve_subcomponent_type",
]
