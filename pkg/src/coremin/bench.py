"""Benchmark harness: redundancy-rate variants, TP-call counts, runtimes.

Variants are produced by duplicating every constraint of a base knowledge
base a fixed number of times and shuffling the result, so a duplication
factor d guarantees a redundancy rate of at least (d-1)/d.  Runs are driven
entirely by a caller seed: per-iteration seeds come from a splitmix64 mixer
and the shuffle is a self-contained Fisher-Yates, so every field except
wall-clock runtime is bit-identical across runs, platforms, and Python
versions.
"""

from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence, TextIO

from .cores import InconsistentKBError, corediag, sequential
from .model import Constraint, Expr, KnowledgeBase, Variable
from .solve import CheckStats, ConsistencyProblem, find_solution, is_consistent


class Algorithm(Enum):
    SEQUENTIAL = "sequential"
    COREDIAG = "corediag"


@dataclass(frozen=True)
class BenchConfig:
    duplication_factors: tuple[int, ...] = (1, 2, 4, 8)
    iterations: int = 10
    seed: int = 0
    algorithms: tuple[Algorithm, ...] = (Algorithm.SEQUENTIAL, Algorithm.COREDIAG)

    def __post_init__(self) -> None:
        object.__setattr__(self, "duplication_factors", tuple(self.duplication_factors))
        object.__setattr__(self, "algorithms", tuple(self.algorithms))
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if any(f < 1 for f in self.duplication_factors):
            raise ValueError("duplication factors must be >= 1")


@dataclass(frozen=True)
class BenchRecord:
    """One measurement row; see CSV_HEADER for the serialized order."""

    kb_name: str
    algorithm: Algorithm
    factor: int
    nominal_rate: float
    iteration: int
    n_constraints: int
    tp_calls: int
    runtime_ms: float
    n_redundant: int


CSV_HEADER = (
    "kb,algorithm,factor,nominal_rate,iteration,n_constraints,tp_calls,runtime_ms,n_redundant"
)

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix64(x: int) -> int:
    # splitmix64 finalizer; stable everywhere, unlike random.Random
    x &= _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def derive_seed(seed: int, *parts: int) -> int:
    """Fold loop indices into a base seed, order-sensitively."""
    x = seed & _MASK64
    for part in parts:
        x = _mix64(x + _GOLDEN + (part & _MASK64))
    return x


def _shuffle(items: list, seed: int) -> None:
    state = seed & _MASK64
    for i in range(len(items) - 1, 0, -1):
        state = (state + _GOLDEN) & _MASK64
        j = _mix64(state) % (i + 1)
        items[i], items[j] = items[j], items[i]


def gen_variant(kb: KnowledgeBase, factor: int, seed: int) -> KnowledgeBase:
    """Duplicate every constraint `factor` times and shuffle deterministically.

    Copies get suffixed labels (`c1#1`, `c1#2`, ...); a factor of 1 keeps
    the original labels and only permutes the order.  Variables are
    unchanged and copies share the original expression objects.
    """
    if factor < 1:
        raise ValueError("duplication factor must be >= 1")
    if factor == 1:
        items = list(kb.constraints)
    else:
        items = [
            Constraint(f"{c.label}#{k}", c.expr)
            for c in kb.constraints
            for k in range(1, factor + 1)
        ]
    _shuffle(items, seed)
    return KnowledgeBase(kb.variables, tuple(items))


def redundancy_rate(
    kb: KnowledgeBase, stats: CheckStats, setup_stats: CheckStats | None = None
) -> float:
    """Fraction of constraints the divide-and-conquer eliminator removes."""
    if not kb.constraints:
        return 0.0
    result = corediag(kb, stats, setup_stats)
    return len(result.redundant) / len(kb.constraints)


def theoretical_tp_bounds(n: int, c: int) -> tuple[float, float]:
    """(best, worst) consistency-check counts for the divide-and-conquer
    eliminator on n constraints with a core of size c, unrounded."""
    if c < 1 or c > n:
        raise ValueError(f"core size must satisfy 1 <= c <= n, got n={n}, c={c}")
    log_ratio = math.log2(n / c)
    return log_ratio + 2 * c, 2 * c * log_ratio + 2 * c


_RUNNERS = {Algorithm.SEQUENTIAL: sequential, Algorithm.COREDIAG: corediag}


def run_bench(
    kbs: Sequence[tuple[str, KnowledgeBase]], cfg: BenchConfig
) -> list[BenchRecord]:
    """Run every kb x factor x iteration x algorithm cell.

    Both algorithms of an iteration see the same shuffled variant.  Record
    order is the deterministic nominal order, and with a fixed seed every
    field except runtime_ms is identical across runs.
    """
    records: list[BenchRecord] = []
    for kb_index, (name, kb) in enumerate(kbs):
        if kb.constraints and not is_consistent(
            ConsistencyProblem(kb.variables, kb.exprs()), CheckStats()
        ):
            raise InconsistentKBError(f"knowledge base {name!r} is inconsistent")
        for factor in cfg.duplication_factors:
            for iteration in range(cfg.iterations):
                seed = derive_seed(cfg.seed, kb_index, factor, iteration)
                variant = gen_variant(kb, factor, seed)
                for algorithm in cfg.algorithms:
                    stats = CheckStats()
                    started = time.perf_counter()
                    result = _RUNNERS[algorithm](variant, stats)
                    runtime_ms = (time.perf_counter() - started) * 1000.0
                    records.append(
                        BenchRecord(
                            kb_name=name,
                            algorithm=algorithm,
                            factor=factor,
                            nominal_rate=(factor - 1) / factor,
                            iteration=iteration,
                            n_constraints=len(variant.constraints),
                            tp_calls=stats.tp_calls,
                            runtime_ms=runtime_ms,
                            n_redundant=len(result.redundant),
                        )
                    )
    return records


def write_csv(records: Iterable[BenchRecord], out: TextIO) -> None:
    """Write records with the fixed header; floats keep a `.` separator."""
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER.split(","))
    for r in records:
        writer.writerow(
            [
                r.kb_name,
                r.algorithm.value,
                r.factor,
                r.nominal_rate,
                r.iteration,
                r.n_constraints,
                r.tp_calls,
                r.runtime_ms,
                r.n_redundant,
            ]
        )


@dataclass(frozen=True)
class SolveMeasurement:
    expr_evals: int
    runtime_ms: float


def _measure_solve(variables: tuple[Variable, ...], exprs: tuple[Expr, ...]) -> SolveMeasurement:
    stats = CheckStats()
    started = time.perf_counter()
    find_solution(ConsistencyProblem(variables, exprs), stats)
    runtime_ms = (time.perf_counter() - started) * 1000.0
    return SolveMeasurement(stats.expr_evals, runtime_ms)


def solve_time_comparison(
    kb: KnowledgeBase, factor: int, seed: int
) -> tuple[SolveMeasurement, SolveMeasurement]:
    """Solving cost on a duplicated variant vs. on its extracted core.

    Returns (full, core) measurements of find_solution; expression
    evaluations are the deterministic proxy, wall-clock the raw one.
    """
    variant = gen_variant(kb, factor, seed)
    core_labels = set(corediag(variant, CheckStats()).core)
    core_exprs = tuple(c.expr for c in variant.constraints if c.label in core_labels)
    full = _measure_solve(variant.variables, variant.exprs())
    core = _measure_solve(variant.variables, core_exprs)
    return full, core
