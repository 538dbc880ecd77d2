"""Command-line interface.

Subcommands: solve, check, core, gen, bench.  Exit codes: 0 on success, 1
for usage or parse errors, 2 when an input knowledge base violates a
consistency precondition.  Diagnostics go to stderr as
`file:line:column: kind: message` lines.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bench import Algorithm, BenchConfig, gen_variant, run_bench, write_csv
from .cores import InconsistentKBError, UnknownLabelError, corediag, is_redundant, sequential
from .kbformat import KBParseError, parse_constraints, parse_kb, serialize_kb
from .model import KnowledgeBase
from .solve import CheckStats, ConsistencyProblem, find_solution


class _UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; the CLI contract wants 1.
    def error(self, message):
        raise _UsageError(message)


class _InputError(Exception):
    """Input file could not be read or parsed; diagnostics already carried."""

    def __init__(self, messages: list[str]):
        self.messages = messages
        super().__init__(messages[0] if messages else "invalid input")


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _InputError([f"{path}: {exc.strerror or exc}"]) from exc


def _load_kb(path: str) -> KnowledgeBase:
    text = _read(path)
    try:
        return parse_kb(text)
    except KBParseError as exc:
        raise _InputError([f"{path}:{e}" for e in exc.errors]) from exc


def _cmd_solve(args) -> int:
    kb = _load_kb(args.file)
    exprs = list(kb.exprs())
    if args.requirements:
        text = _read(args.requirements)
        try:
            requirements = parse_constraints(text, kb.variables)
        except KBParseError as exc:
            raise _InputError([f"{args.requirements}:{e}" for e in exc.errors]) from exc
        exprs.extend(c.expr for c in requirements)
    solution = find_solution(ConsistencyProblem(kb.variables, tuple(exprs)), CheckStats())
    if solution is None:
        print("INCONSISTENT")
    else:
        for variable in kb.variables:
            print(f"{variable.name}={solution[variable.name]}")
    return 0


def _cmd_check(args) -> int:
    kb = _load_kb(args.file)
    redundant = is_redundant(kb, args.constraint, CheckStats())
    print("REDUNDANT" if redundant else "NON-REDUNDANT")
    return 0


def _cmd_core(args) -> int:
    kb = _load_kb(args.file)
    stats = CheckStats()
    runner = sequential if args.algorithm == "sequential" else corediag
    result = runner(kb, stats)
    print("core: " + " ".join(result.core))
    print("redundant: " + " ".join(result.redundant))
    if args.stats:
        print(f"tp_calls={stats.tp_calls}")
    return 0


def _cmd_gen(args) -> int:
    kb = _load_kb(args.file)
    if args.factor < 1:
        raise _UsageError("--factor must be >= 1")
    variant = gen_variant(kb, args.factor, args.seed)
    Path(args.output).write_text(serialize_kb(variant))
    return 0


def _cmd_bench(args) -> int:
    try:
        factors = tuple(int(part) for part in args.factors.split(","))
    except ValueError:
        raise _UsageError(f"invalid --factors value: {args.factors!r}") from None
    if not factors or any(f < 1 for f in factors):
        raise _UsageError("--factors must be a comma list of integers >= 1")
    if args.iterations < 1:
        raise _UsageError("--iterations must be >= 1")
    kbs = [(Path(path).stem, _load_kb(path)) for path in args.files]
    cfg = BenchConfig(
        duplication_factors=factors,
        iterations=args.iterations,
        seed=args.seed,
        algorithms=(Algorithm.SEQUENTIAL, Algorithm.COREDIAG),
    )
    records = run_bench(kbs, cfg)
    with open(args.output, "w", newline="") as out:
        write_csv(records, out)
    return 0


def _build_parser() -> _ArgumentParser:
    parser = _ArgumentParser(
        prog="coremin",
        description="Detect and eliminate redundant constraints in finite-domain "
        "knowledge bases.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="print a valid configuration or INCONSISTENT")
    p.add_argument("file", help="knowledge-base file")
    p.add_argument("--requirements", help="constraints-only file with requirements")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("check", help="test one constraint for redundancy")
    p.add_argument("file")
    p.add_argument("--constraint", required=True, help="label of the constraint to test")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("core", help="compute the minimal core and redundant set")
    p.add_argument("file")
    p.add_argument(
        "--algorithm",
        choices=("sequential", "corediag"),
        default="corediag",
    )
    p.add_argument("--stats", action="store_true", help="also print the TP-call count")
    p.set_defaults(func=_cmd_core)

    p = sub.add_parser("gen", help="write a duplicated and shuffled variant")
    p.add_argument("file")
    p.add_argument("--factor", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("bench", help="run the benchmark grid and write a CSV")
    p.add_argument("files", nargs="+")
    p.add_argument("--factors", default="1,2,4,8", help="comma list, e.g. 1,2,4,8")
    p.add_argument("--iterations", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except _InputError as exc:
        for message in exc.messages:
            print(message, file=sys.stderr)
        return 1
    except UnknownLabelError as exc:
        print(f"error: unknown constraint label {exc.args[0]!r}", file=sys.stderr)
        return 1
    except InconsistentKBError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
