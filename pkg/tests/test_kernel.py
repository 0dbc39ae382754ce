"""Kernel tests against a throwaway two-line "toy" language; no real language is imported."""

from __future__ import annotations

import copy
from dataclasses import dataclass, field

import pytest
from hypothesis import given
from hypothesis import strategies as st

from langbench.kernel import (AMBIGUOUS, CODES, NOT_FOUND, SKIP, AdapterRegistration,
                              ConfigurationError, Diagnostic, LanguageDescriptor,
                              Node, ParseError, Phase, Scope, Severity, SkipVisitor,
                              Span, SymbolEntry, TokenStream, TraversalError,
                              Visibility, Visitor, Workbench, Workflow,
                              compose_visitors, error, register_codes,
                              sort_diagnostics, tokenize, warning)
from langbench.kernel.lexer import quote, unquote

from conftest import write_models


# -- toy language ----------------------------------------------------------
# One declaration per line:
#   entry <kind> <name> [internal]
#   member <owner> <kind> <name> [internal]
#   use <kind> <name>

@dataclass
class ToyModel(Node):
    language = "toy"
    lines: list[list[str]] = field(default_factory=list)


def parse_toy(text, filename):
    rows = [line.split() for line in text.splitlines() if line.strip()]
    for i, row in enumerate(rows, 1):
        if row[0] not in ("entry", "member", "use"):
            return None, [error("TOY0000", Span(filename, i, 1), "bad line")]
    return ToyModel(rows), []


def _vis(row, idx):
    return Visibility.INTERNAL if len(row) > idx and row[idx] == "internal" else Visibility.EXPORTED


def define_toy(unit, wb):
    diags = []
    root = unit.root_scope
    for row in unit.ast.lines:
        if row[0] == "entry":
            e = SymbolEntry(row[2], row[1], _vis(row, 3))
            if root.add(e) is not None:
                diags.append(error("TOY0001", Span(unit.path, 1, 1), f"duplicate {row[2]}"))
            else:
                Scope(root, owner=e)
        elif row[0] == "member":
            owner = next(e for e in root.lookup(row[1]))
            owner.members.add(SymbolEntry(row[3], row[2], _vis(row, 4)))
    return diags


def check_toy(unit, wb):
    diags = []
    for row in unit.ast.lines:
        if row[0] == "use" and not isinstance(wb.resolve(row[2], row[1], unit.root_scope), SymbolEntry):
            diags.append(error("TOY0002", Span(unit.path, 1, 1), f"unresolved {row[2]}"))
    return diags


def toy_descriptor(language_id="toy", extension=".toy"):
    return LanguageDescriptor(language_id, extension, parse_toy, [
        Workflow("toy-define", Phase.DEFINE, define_toy),
        Workflow("toy-check", Phase.CHECK, check_toy),
    ])


def _adapter(src, dst):
    return AdapterRegistration(src, dst, lambda e: SymbolEntry(e.name, dst, adapted_from=e,
                                                                payload={"via": src}))


@pytest.fixture
def wb():
    w = Workbench()
    w.register_language(toy_descriptor())
    return w


def load(wb, tmp_path, files):
    write_models(tmp_path, files)
    return wb.process([tmp_path])


# -- diagnostics -------------------------------------------------------------

def test_diagnostic_format():
    d = error("KRN0002", Span("m/a.toy", 3, 7), "cannot read file")
    assert d.format() == "ERROR KRN0002 m/a.toy:3:7 cannot read file"
    assert warning("KRN0001", Span("x", 1, 1), "w").severity is Severity.WARNING


@pytest.mark.parametrize("code", ["X0001", "KRN001", "krn0001", "ABCD0001", ""])
def test_malformed_codes_rejected(code):
    with pytest.raises(ValueError):
        Diagnostic(Severity.ERROR, code, Span("f", 1, 1), "m")


def test_code_registry_rejects_conflicting_descriptions():
    register_codes({"KRN0001": CODES["KRN0001"]})  # same text is fine
    with pytest.raises(ValueError):
        register_codes({"KRN0001": "something else"})


def test_diagnostics_sorted_by_position_then_code():
    a = error("KRN0003", Span("b", 1, 1), "")
    b = error("KRN0002", Span("a", 2, 1), "")
    c = error("KRN0002", Span("a", 1, 5), "")
    d = warning("KRN0001", Span("a", 1, 5), "")
    assert sort_diagnostics([a, b, c, d]) == [d, c, b, a]


# -- lexer -------------------------------------------------------------------

def test_tokenize_punctuation_and_comments():
    toks = tokenize("a->b // note\n/* block\n */ x <= 3 && !y", "f")
    assert [t.text for t in toks[:-1]] == ["a", "->", "b", "x", "<=", "3", "&&", "!", "y"]
    assert toks[3].span.line == 3
    assert toks[-1].kind == "EOF"


@pytest.mark.parametrize("text", ['"abc', "/* open", "a $ b"])
def test_tokenize_errors(text):
    with pytest.raises(ParseError):
        tokenize(text)


@given(st.text(alphabet=st.characters(blacklist_categories=("Cs",)), max_size=30))
def test_quote_unquote_roundtrip(s):
    assert unquote(quote(s)) == s


def test_parse_error_claim_keeps_innermost_code():
    exc = ParseError(Span("f", 1, 1), "m")
    assert exc.claim("EXP0000").claim("TBL0000").code == "EXP0000"


def test_recover_element_stops_at_statement_or_block_end():
    ts = TokenStream.from_text("a b ; c { d ; } e } f")
    ts.recover_element()
    assert ts.current.text == "c"
    ts.recover_element()
    assert ts.current.text == "e"
    ts.recover_element()
    assert ts.current.text == "}"  # enclosing block is left for the caller


def test_qualified_name():
    ts = TokenStream.from_text("demo.Types.MotorCmd x")
    assert ts.qualified_name()[0] == "demo.Types.MotorCmd"
    assert ts.current.text == "x"


# -- scopes ------------------------------------------------------------------

def test_scope_rejects_duplicate_name_kind():
    s = Scope(unit="u")
    first = SymbolEntry("a", "K")
    assert s.add(first) is None
    assert s.add(SymbolEntry("a", "K")) is first
    assert s.add(SymbolEntry("a", "L")) is None
    assert len(s.lookup("a")) == 2
    assert first.unit == "u" and first.scope is s


def test_scope_tree_shares_unit():
    root = Scope(unit="p.U")
    owner = SymbolEntry("C", "K")
    root.add(owner)
    inner = Scope(root, owner=owner)
    assert inner.unit == "p.U" and owner.members is inner
    assert list(inner.enclosing()) == [inner, root]
    assert inner.root is root
    assert list(root.walk()) == [root, inner]


# -- registration ------------------------------------------------------------

def test_register_language_twice_is_configuration_error(wb):
    with pytest.raises(ConfigurationError):
        wb.register_language(toy_descriptor())
    with pytest.raises(ConfigurationError):
        wb.register_language(toy_descriptor("other", ".toy"))


def test_register_adapter_twice_is_configuration_error(wb):
    wb.register_adapter(_adapter("A", "B"))
    with pytest.raises(ConfigurationError):
        wb.register_adapter(_adapter("A", "B"))


# -- loading -----------------------------------------------------------------

def test_empty_directory(wb, tmp_path):
    assert wb.process([tmp_path]) == []
    assert wb.units == {}


def test_unregistered_extension_is_skipped_with_warning(wb, tmp_path):
    diags = load(wb, tmp_path, {"p/notes.xyz": "hi", "p/A.toy": "entry K a"})
    assert [(d.code, d.severity) for d in diags] == [("KRN0001", Severity.WARNING)]
    assert list(wb.units) == ["p.A"]


def test_dotfiles_are_ignored(wb, tmp_path):
    assert load(wb, tmp_path, {".hidden/A.toy": "bad", ".B.toy": "bad"}) == []


def test_unreadable_file_is_krn0002(wb, tmp_path):
    (tmp_path / "A.toy").write_bytes(b"entry K \xff\n")
    assert [d.code for d in wb.process([tmp_path])] == ["KRN0002"]


def test_same_qualified_name_in_two_roots_keeps_first(wb, tmp_path):
    r1 = write_models(tmp_path / "r1", {"demo/Types.toy": "entry K first"})
    r2 = write_models(tmp_path / "r2", {"demo/Types.toy": "entry K second"})
    diags = wb.process([r1, r2])
    assert [d.code for d in diags] == ["KRN0003"]
    assert wb.units["demo.Types"].path.startswith(str(r1))


def test_qualified_name_from_directory(wb, tmp_path):
    load(wb, tmp_path, {"a/b/C.toy": "entry K x"})
    unit = wb.units["a.b.C"]
    assert (unit.package, unit.simple_name) == ("a.b", "C")


# -- phases ------------------------------------------------------------------

def test_parse_error_stops_before_define(wb, tmp_path):
    diags = load(wb, tmp_path, {"p/A.toy": "oops", "p/B.toy": "use K nothing"})
    assert [d.code for d in diags] == ["TOY0000"]


def test_define_error_stops_before_check(wb, tmp_path):
    diags = load(wb, tmp_path, {"p/A.toy": "entry K a\nentry K a\nuse K nothing"})
    assert [d.code for d in diags] == ["TOY0001"]


def test_generate_without_workflows_is_noop(wb, tmp_path):
    load(wb, tmp_path, {"p/A.toy": "entry K a"})
    assert wb.run_phase(Phase.GENERATE) == []


def test_workflows_run_in_qualified_name_order(tmp_path):
    seen = []
    w = Workbench()
    w.register_language(LanguageDescriptor("toy", ".toy", parse_toy, [
        Workflow("record", Phase.DEFINE, lambda u, wb: seen.append(u.qualified_name) or [])]))
    write_models(tmp_path, {"z/A.toy": "", "a/Z.toy": "", "m/M.toy": ""})
    w.process([tmp_path])
    assert seen == ["a.Z", "m.M", "z.A"]


def test_phase_determinism(tmp_path):
    write_models(tmp_path, {f"p/U{i}.toy": f"use K missing{i}\nuse K m" for i in range(8)})
    runs = []
    for _ in range(3):
        w = Workbench()
        w.register_language(toy_descriptor())
        runs.append([d.format() for d in w.process([tmp_path])])
    assert runs[0] == runs[1] == runs[2] and len(runs[0]) == 16


# -- resolution --------------------------------------------------------------

def test_resolution_stages(wb, tmp_path):
    diags = load(wb, tmp_path, {
        "p/A.toy": "entry K a\nentry K hidden internal\nmember a K m\nmember a K secret internal",
        "p/B.toy": "use K a\nuse K a.m\nuse K p.A.a\nuse K p.A.a.m",
        "q/C.toy": "use K p.A.a",
    })
    assert diags == []
    b = wb.units["p.B"].root_scope
    a = wb.resolve("a", "K", b)
    assert a.unit == "p.A"
    assert wb.resolve("a.m", "K", b).name == "m"
    assert wb.resolve("hidden", "K", b) is NOT_FOUND
    assert wb.resolve("a.secret", "K", b) is NOT_FOUND
    assert wb.resolve("p.A.hidden", "K", b) is NOT_FOUND
    # q.C is in another package: no implicit import, but qualified names work
    c = wb.units["q.C"].root_scope
    assert wb.resolve("a", "K", c) is NOT_FOUND
    assert wb.resolve("p.A.a", "K", c) is a


def test_internal_entries_visible_inside_own_unit(wb, tmp_path):
    load(wb, tmp_path, {"p/A.toy": "entry K hidden internal\nmember hidden K s internal"})
    root = wb.units["p.A"].root_scope
    assert wb.resolve("hidden", "K", root).name == "hidden"
    assert wb.resolve("hidden.s", "K", root).name == "s"


def test_explicit_import_of_other_package(wb, tmp_path):
    load(wb, tmp_path, {"p/A.toy": "entry K a", "q/C.toy": ""})
    scope = wb.units["q.C"].root_scope
    scope.imports.append("p.A")
    assert wb.resolve("a", "K", scope).unit == "p.A"
    scope.imports[:] = ["p.*"]
    assert wb.resolve("a", "K", scope).unit == "p.A"


def test_ambiguous_across_imports(wb, tmp_path):
    load(wb, tmp_path, {"p/A.toy": "entry K x", "p/B.toy": "entry K x", "p/C.toy": ""})
    assert wb.resolve("x", "K", wb.units["p.C"].root_scope) is AMBIGUOUS


def test_lexical_scope_shadows_imports(wb, tmp_path):
    load(wb, tmp_path, {"p/A.toy": "entry K x", "p/B.toy": "entry K x"})
    scope = wb.units["p.B"].root_scope
    assert wb.resolve("x", "K", scope).unit == "p.B"


def test_resolve_unknown_is_not_found(wb, tmp_path):
    load(wb, tmp_path, {"p/A.toy": "entry K a"})
    assert wb.resolve("NoSuchType", "K", wb.units["p.A"].root_scope) is NOT_FOUND
    assert wb.resolve_global("p.A.nothing", "K") is NOT_FOUND


# -- adapters ----------------------------------------------------------------

def test_adapter_applied_only_when_registered(tmp_path):
    for registered in (False, True):
        w = Workbench()
        w.register_language(toy_descriptor())
        if registered:
            w.register_adapter(_adapter("CDType", "ArcdType"))
        write_models(tmp_path / str(registered), {"p/A.toy": "entry CDType MotorCmd"})
        w.process([tmp_path / str(registered)])
        hit = w.resolve("MotorCmd", "ArcdType", w.units["p.A"].root_scope)
        if registered:
            assert hit.kind == "ArcdType"
            assert hit.adapted_from is w.units["p.A"].root_scope.local("MotorCmd", "CDType")
            assert hit.unit == "p.A"
        else:
            assert hit is NOT_FOUND


def test_direct_match_beats_adaptation(wb, tmp_path):
    wb.register_adapter(_adapter("A", "B"))
    load(wb, tmp_path, {"p/U.toy": "entry A n\nentry B n"})
    hit = wb.resolve("n", "B", wb.units["p.U"].root_scope)
    assert hit.kind == "B" and hit.adapted_from is None


def test_two_adaptable_candidates_are_ambiguous(wb, tmp_path):
    wb.register_adapter(_adapter("A", "C"))
    wb.register_adapter(_adapter("B", "C"))
    load(wb, tmp_path, {"p/U.toy": "entry A n\nentry B n"})
    assert wb.resolve("n", "C", wb.units["p.U"].root_scope) is AMBIGUOUS


def test_malformed_adapter_is_configuration_error(wb, tmp_path):
    wb.register_adapter(AdapterRegistration("A", "B", lambda e: SymbolEntry(e.name, "B")))
    load(wb, tmp_path, {"p/U.toy": "entry A n"})
    with pytest.raises(ConfigurationError):
        wb.resolve("n", "B", wb.units["p.U"].root_scope)


@given(st.lists(st.sampled_from(["A", "B", "C"]), min_size=1, max_size=6))
def test_adapters_idempotent_and_never_chain(kinds):
    w = Workbench()
    w.register_adapter(_adapter("A", "B"))
    w.register_adapter(_adapter("B", "C"))
    scope = Scope(unit="u")
    for i, k in enumerate(kinds):
        scope.add(SymbolEntry(f"n{i}", k))
    for i, k in enumerate(kinds):
        for expected in ("A", "B", "C"):
            first = w.resolve(f"n{i}", expected, scope)
            again = w.resolve(f"n{i}", expected, scope)
            assert first is again
            if k == expected:
                assert first.adapted_from is None
            elif (k, expected) in (("A", "B"), ("B", "C")):
                assert first.adapted_from.kind == k
                assert first.adapted_from.adapted_from is None
            else:  # A -> C would need two steps
                assert first is NOT_FOUND


# -- composite visitors ------------------------------------------------------

@dataclass
class Host(Node):
    language = "host"
    name: str
    parts: list[Node] = field(default_factory=list)


@dataclass
class Guest(Node):
    language = "guest"
    value: int
    inner: list[Node] = field(default_factory=list)


class Recorder(Visitor):
    def __init__(self, log, tag):
        self.log, self.tag = log, tag

    def generic_visit(self, node):
        self.log.append((self.tag, type(node).__name__))

    def leave_Host(self, node):
        self.log.append((self.tag, "/Host"))


def _tree():
    return Host("root", [Guest(1, [Guest(2)]), Host("sub", [Guest(3)])])


def test_composite_dispatches_per_language():
    log = []
    v = compose_visitors({"host": Recorder(log, "h"), "guest": Recorder(log, "g")})
    v.traverse(_tree())
    assert log == [("h", "Host"), ("g", "Guest"), ("g", "Guest"), ("h", "Host"), ("g", "Guest"),
                   ("h", "/Host"), ("h", "/Host")]
    assert v.visited == 5


def test_skip_prunes_subtree():
    log = []
    v = compose_visitors({"host": Recorder(log, "h")}, default=SkipVisitor())
    v.traverse(_tree())
    assert [x for x in log if x[1] == "Guest"] == []
    assert v.visited == 4  # root, first guest (skipped), sub, guest in sub


def test_skip_from_visit_method():
    class NoSub(Visitor):
        def visit_Host(self, node):
            return SKIP if node.name == "sub" else None
    v = compose_visitors({"host": NoSub(), "guest": Visitor()})
    v.traverse(_tree())
    assert v.visited == 4


def test_missing_part_without_default():
    with pytest.raises(TraversalError):
        compose_visitors({"host": Visitor()}).traverse(_tree())


def test_single_language_composite_matches_plain_visitor():
    tree = Host("a", [Host("b"), Host("c", [Host("d")])])
    plain, composed = [], []
    part = Recorder(plain, "x")

    def walk(n):
        part.visit(n)
        for c in n.children():
            walk(c)
        part.leave(n)
    walk(tree)
    compose_visitors({"host": Recorder(composed, "x")}).traverse(tree)
    assert plain == composed


def test_visit_count_equals_node_count():
    tree = _tree()
    memo = {}
    copy.deepcopy(tree, memo)
    v = compose_visitors({}, default=Visitor())
    v.traverse(tree)
    assert v.visited == sum(isinstance(o, Node) for o in memo.values())


def test_unit_name_stands_for_its_eponymous_entry(wb, tmp_path):
    load(wb, tmp_path, {"p/A.toy": "entry K A\nmember A K port\nmember A K inner internal",
                        "q/B.toy": ""})
    scope = wb.units["q.B"].root_scope
    assert wb.resolve("p.A.port", "K", scope).name == "port"
    assert wb.resolve("p.A.A.port", "K", scope).name == "port"
    assert wb.resolve("p.A.inner", "K", scope) is NOT_FOUND
