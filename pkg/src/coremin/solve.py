"""Complete consistency checking over finite-domain constraint problems.

This is the "theorem prover" whose invocations the rest of the package
counts: every `is_consistent` call bumps `CheckStats.tp_calls` by exactly
one, whatever the outcome.

The search is deterministic chronological backtracking: variables are bound
in declaration order, values tried in domain order, and each expression is
evaluated as soon as all of its variables are bound.  No propagation beyond
that early evaluation is performed, so results depend only on the problem,
never on timing.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .model import Assignment, Expr, Variable, free_vars, validate_expr
from .model import And, Atom, CmpOp, Implies, Not, Or


class BudgetExceededError(Exception):
    """A consistency check ran past its optional time budget."""


@dataclass
class CheckStats:
    """Counters for consistency-check calls and per-expression evaluations.

    `tp_calls` increments once per `is_consistent` invocation; `expr_evals`
    counts individual top-level expression evaluations inside the search;
    `elapsed_ms` accumulates wall-clock time spent searching.  Concurrent
    checks must use distinct instances.
    """

    tp_calls: int = 0
    expr_evals: int = 0
    elapsed_ms: float = 0.0


@dataclass(frozen=True)
class ConsistencyProblem:
    """A conjunction of expressions over an ordered variable list."""

    variables: tuple[Variable, ...]
    exprs: tuple[Expr, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "exprs", tuple(self.exprs))
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names in consistency problem")
        domains = {v.name: frozenset(v.domain) for v in self.variables}
        for expr in self.exprs:
            validate_expr(expr, domains)


def _compile(expr: Expr, index: dict[str, int]):
    """Compile an expression to a predicate over the value array.

    And/Or children are deduplicated structurally; repeated conjuncts or
    disjuncts cannot change the result.
    """
    if isinstance(expr, Atom):
        i = index[expr.var]
        v = expr.value
        if expr.op is CmpOp.EQ:
            return lambda vals: vals[i] == v
        return lambda vals: vals[i] != v
    if isinstance(expr, Not):
        f = _compile(expr.child, index)
        return lambda vals: not f(vals)
    if isinstance(expr, And):
        fs = [_compile(c, index) for c in dict.fromkeys(expr.children)]
        return lambda vals: all(f(vals) for f in fs)
    if isinstance(expr, Or):
        fs = [_compile(c, index) for c in dict.fromkeys(expr.children)]
        return lambda vals: any(f(vals) for f in fs)
    p = _compile(expr.antecedent, index)
    q = _compile(expr.consequent, index)
    return lambda vals: q(vals) if p(vals) else True


def _search(
    variables: tuple[Variable, ...],
    exprs: list[Expr],
    stats: CheckStats,
    budget_ms: float | None,
) -> list[str] | None:
    """Return the first satisfying value tuple in search order, or None."""
    index = {v.name: i for i, v in enumerate(variables)}
    m = len(variables)
    # An expression becomes decidable once its last variable (in declaration
    # order) is bound; bucket it there for early pruning.
    buckets: list[list] = [[] for _ in range(m)]
    for expr in exprs:
        last = max(index[name] for name in free_vars(expr))
        buckets[last].append(_compile(expr, index))
    domains = [v.domain for v in variables]
    vals: list[str | None] = [None] * m
    deadline = None if budget_ms is None else time.perf_counter() + budget_ms / 1000.0

    def step(d: int) -> bool:
        if deadline is not None and time.perf_counter() > deadline:
            raise BudgetExceededError(f"consistency check exceeded {budget_ms} ms")
        if d == m:
            return True
        checks = buckets[d]
        for value in domains[d]:
            vals[d] = value
            ok = True
            for check in checks:
                stats.expr_evals += 1
                if not check(vals):
                    ok = False
                    break
            if ok and step(d + 1):
                return True
        vals[d] = None
        return False

    return list(vals) if step(0) else None  # type: ignore[arg-type]


def is_consistent(
    problem: ConsistencyProblem, stats: CheckStats, budget_ms: float | None = None
) -> bool:
    """True iff some complete assignment satisfies every expression.

    Complete: agrees with exhaustive enumeration on every problem.  Counts
    as exactly one TP call.
    """
    stats.tp_calls += 1
    started = time.perf_counter()
    try:
        # Duplicate conjuncts cannot change satisfiability; drop them so
        # high-duplication inputs stay cheap.
        found = _search(problem.variables, list(dict.fromkeys(problem.exprs)), stats, budget_ms)
    finally:
        stats.elapsed_ms += (time.perf_counter() - started) * 1000.0
    return found is not None


def find_solution(
    problem: ConsistencyProblem, stats: CheckStats, budget_ms: float | None = None
) -> Assignment | None:
    """First complete satisfying assignment in deterministic search order.

    Unlike `is_consistent`, every listed expression is evaluated and counted
    individually, so `stats.expr_evals` reflects the full constraint list.
    """
    started = time.perf_counter()
    try:
        found = _search(problem.variables, list(problem.exprs), stats, budget_ms)
    finally:
        stats.elapsed_ms += (time.perf_counter() - started) * 1000.0
    if found is None:
        return None
    return {v.name: found[i] for i, v in enumerate(problem.variables)}
