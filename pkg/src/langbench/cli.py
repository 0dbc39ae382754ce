"""Command-line front end: ``langbench check|simulate|graph|ir``."""

from __future__ import annotations

import argparse
import contextlib
import random
import sys
from pathlib import Path

from . import artifacts, simulator
from .family_maa import register_family
from .kernel import CODES, ConfigurationError, Phase, SymbolEntry, Workbench, has_errors
from .lang_arc import COMPONENT

EXIT_OK, EXIT_MODEL, EXIT_USAGE, EXIT_SIM = 0, 1, 2, 3


class _UsageError(Exception):
    pass


def _epilog() -> str:
    lines = ["exit codes: 0 success, 1 model errors, 2 usage errors, 3 simulation errors", "",
             "diagnostic codes:"]
    lines += [f"  {code}  {CODES[code]}" for code in sorted(CODES)]
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--modelpath", action="append", metavar="DIR",
                        help="model root directory (repeatable; default: current directory)")
    common.add_argument("--main", metavar="QNAME", help="qualified name of the main component")

    parser = argparse.ArgumentParser(prog="langbench", epilog=_epilog(),
                                     formatter_class=argparse.RawDescriptionHelpFormatter,
                                     description="Check, simulate and render component models.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common], help="parse and check all models")
    sim = sub.add_parser("simulate", parents=[common], help="run a scenario against --main")
    sim.add_argument("--scenario", required=True, metavar="CSV")
    sim.add_argument("--ticks", required=True, type=int)
    sim.add_argument("--trace", metavar="OUT", help="write the trace here instead of stdout")
    sim.add_argument("--repeat-last", action="store_true",
                     help="repeat the last scenario row when it has fewer rows than ticks")
    sim.add_argument("--seed", type=int, default=None,
                     help="shuffle the compute order with this seed (traces must not change)")
    graph = sub.add_parser("graph", parents=[common], help="emit a DOT diagram of --main")
    graph.add_argument("-o", "--output", metavar="OUT")
    ir = sub.add_parser("ir", parents=[common], help="emit the JSON IR of all models")
    ir.add_argument("-o", "--output", metavar="OUT")
    return parser


def _emit(text: str, target: str | None, stdout) -> None:
    if target:
        Path(target).write_text(text, encoding="utf-8", newline="")
    else:
        stdout.write(text)


def _run(args, stdout, stderr) -> int:
    if args.command in ("simulate", "graph") and not args.main:
        raise _UsageError(f"'{args.command}' requires --main")
    roots = args.modelpath or ["."]
    for root in roots:
        if not Path(root).is_dir():
            raise _UsageError(f"model path '{root}' is not a directory")

    wb = Workbench()
    register_family(wb)
    diags = wb.process(roots, until=Phase.CHECK)
    for d in diags:
        print(d.format(), file=stderr)
    if has_errors(diags):
        return EXIT_MODEL
    if args.main and not isinstance(wb.resolve_global(args.main, COMPONENT), SymbolEntry):
        raise _UsageError(f"main component '{args.main}' not found")

    if args.command == "check":
        return EXIT_OK
    if args.command == "graph":
        _emit(artifacts.emit_dot(args.main, wb), args.output, stdout)
        return EXIT_OK
    if args.command == "ir":
        _emit(artifacts.emit_ir(wb), args.output, stdout)
        return EXIT_OK
    return _simulate(args, wb, stdout, stderr)


def _simulate(args, wb: Workbench, stdout, stderr) -> int:
    if args.ticks < 0:
        raise _UsageError("--ticks must be non-negative")
    try:
        root = simulator.instantiate(args.main, wb)
        scenario = simulator.load_scenario(args.scenario, root, wb)
    except simulator.SimulationError as exc:
        print(exc.diagnostic.format(), file=stderr)
        return EXIT_SIM
    except OSError as exc:
        raise _UsageError(f"cannot read scenario: {exc}") from None
    try:
        inputs = scenario.inputs(args.ticks, args.repeat_last)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    schedule = None
    if args.seed is not None:
        rng = random.Random(args.seed)

        def schedule(paths):
            rng.shuffle(paths)
            return paths
    trace = simulator.Simulator(root).run(inputs, args.ticks, schedule)
    _emit(simulator.format_trace(trace), args.trace, stdout)
    if trace.error is not None:
        print(trace.error.format(), file=stderr)
        return EXIT_SIM
    return EXIT_OK


def main(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return _run(args, stdout, stderr)
    except (_UsageError, ConfigurationError) as exc:
        print(f"langbench: error: {exc}", file=stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
