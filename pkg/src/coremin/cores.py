"""Redundancy detection and minimal-core extraction.

A constraint is redundant when the rest of the knowledge base already
entails it, i.e. when asserting the remaining constraints together with the
negation of the whole original constraint set is inconsistent.  A minimal
core is a subset that preserves the knowledge base's semantics and from
which no constraint can be dropped.

Two eliminators are provided: a linear scan that spends one consistency
check per constraint (`sequential`), and a QuickXPlain-style
divide-and-conquer (`corediag`/`cored`) whose check count scales with the
size of the core rather than the size of the input, which pays off when
most constraints are redundant.  Both honor the input order as a strict
preference order, so results are deterministic for a fixed ordering.

`enumerate_minimal_cores` is an independent brute-force oracle over full
truth tables, intended for verifying the algorithms on small inputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .model import Constraint, Expr, KnowledgeBase, Variable, evaluate, negate_kb
from .solve import CheckStats, ConsistencyProblem, is_consistent


class InconsistentKBError(Exception):
    """The operation requires a consistent knowledge base."""


class UnknownLabelError(LookupError):
    """A constraint label is not present in the knowledge base."""


class SizeLimitError(Exception):
    """The knowledge base exceeds the oracle's subset-enumeration bound."""


@dataclass(frozen=True)
class CoreResult:
    """Outcome of one elimination run.

    `redundant` and `core` partition the knowledge base's labels, both in
    original order; `stats` holds the algorithm-internal counters.
    """

    redundant: tuple[str, ...]
    core: tuple[str, ...]
    stats: CheckStats


def _require_consistent(kb: KnowledgeBase, setup_stats: CheckStats | None) -> None:
    # Precondition check; counted in setup_stats (if given), never in the
    # algorithm's own counters.
    stats = setup_stats if setup_stats is not None else CheckStats()
    if not is_consistent(ConsistencyProblem(kb.variables, kb.exprs()), stats):
        raise InconsistentKBError("knowledge base is inconsistent")


def is_redundant(
    kb: KnowledgeBase, label: str, stats: CheckStats, setup_stats: CheckStats | None = None
) -> bool:
    """True iff the remaining constraints entail the labeled one.

    Costs exactly one TP call on `stats`.
    """
    if label not in kb.labels():
        raise UnknownLabelError(label)
    _require_consistent(kb, setup_stats)
    negation = negate_kb(kb.constraints)
    rest = [c.expr for c in kb.constraints if c.label != label]
    return not is_consistent(ConsistencyProblem(kb.variables, (*rest, negation)), stats)


def sequential(
    kb: KnowledgeBase, stats: CheckStats, setup_stats: CheckStats | None = None
) -> CoreResult:
    """Linear-scan elimination: one redundancy check per constraint.

    Walks the constraints in knowledge-base order, dropping each one whose
    removal from the working set stays inconsistent with the negation of the
    original constraint list.  The negation is built once, up front, and
    never rebuilt.  Costs exactly n TP calls on `stats`.
    """
    if not kb.constraints:
        return CoreResult((), (), stats)
    _require_consistent(kb, setup_stats)
    negation = negate_kb(kb.constraints)
    n = len(kb.constraints)
    removed: set[int] = set()
    for i in range(n):
        candidate = [kb.constraints[j].expr for j in range(n) if j != i and j not in removed]
        candidate.append(negation)
        if not is_consistent(ConsistencyProblem(kb.variables, tuple(candidate)), stats):
            removed.add(i)
    redundant = tuple(kb.constraints[i].label for i in sorted(removed))
    core = tuple(c.label for i, c in enumerate(kb.constraints) if i not in removed)
    return CoreResult(redundant, core, stats)


def cored(
    background: list[Expr],
    delta: list[Expr],
    candidates: list[Constraint],
    variables: tuple[Variable, ...],
    stats: CheckStats,
) -> list[Constraint]:
    """Divide-and-conquer search for a preferred minimal core.

    `background` is the consideration set (initially just the negated
    knowledge base), `delta` the expressions added to it by the caller, and
    `candidates` the constraints still to be classified.  If something was
    added and the background alone is already inconsistent, none of the
    candidates is needed.  A sole candidate that survives that guard is part
    of the core.  Otherwise the candidates split in half: first the earlier
    half is reduced while the later half backs it up, and whatever the
    earlier half contributed then backs up the reduction of the later half.
    The result preserves candidate order.
    """
    if not candidates:
        return []
    if delta and not is_consistent(ConsistencyProblem(variables, tuple(background)), stats):
        return []
    if len(candidates) == 1:
        return list(candidates)
    k = (len(candidates) + 1) // 2
    first, second = candidates[:k], candidates[k:]
    second_exprs = [c.expr for c in second]
    delta1 = cored([*background, *second_exprs], second_exprs, first, variables, stats)
    delta1_exprs = [c.expr for c in delta1]
    delta2 = cored([*background, *delta1_exprs], delta1_exprs, second, variables, stats)
    return [*delta1, *delta2]


def corediag(
    kb: KnowledgeBase, stats: CheckStats, setup_stats: CheckStats | None = None
) -> CoreResult:
    """Divide-and-conquer elimination; returns the maximal redundant set.

    Builds the negation of the constraint list once, lets `cored` find the
    preferred minimal core, and reports everything else as redundant.
    """
    if not kb.constraints:
        return CoreResult((), (), stats)
    _require_consistent(kb, setup_stats)
    negation = negate_kb(kb.constraints)
    kept = cored([negation], [negation], list(kb.constraints), kb.variables, stats)
    kept_ids = {id(c) for c in kept}
    redundant = tuple(c.label for c in kb.constraints if id(c) not in kept_ids)
    core = tuple(c.label for c in kb.constraints if id(c) in kept_ids)
    return CoreResult(redundant, core, stats)


def is_minimal_core(
    kb: KnowledgeBase, stats: CheckStats, setup_stats: CheckStats | None = None
) -> bool:
    """True iff no constraint can be dropped without losing semantics.

    Checks every constraint (no early exit), so it always costs exactly n
    TP calls on `stats`.
    """
    if not kb.constraints:
        raise ValueError("minimality is undefined for an empty knowledge base")
    _require_consistent(kb, setup_stats)
    negation = negate_kb(kb.constraints)
    n = len(kb.constraints)
    minimal = True
    for i in range(n):
        rest = [kb.constraints[j].expr for j in range(n) if j != i]
        rest.append(negation)
        if not is_consistent(ConsistencyProblem(kb.variables, tuple(rest)), stats):
            minimal = False
    return minimal


def enumerate_minimal_cores(
    kb: KnowledgeBase, max_constraints: int = 12
) -> list[frozenset[str]]:
    """All inclusion-minimal semantics-preserving constraint subsets.

    Brute force over full truth tables, independent of the backtracking
    solver: each constraint gets a bitmask of the complete assignments it
    satisfies, and a subset preserves semantics exactly when the
    intersection of its masks equals the intersection of all masks.
    Intended as a test oracle; refuses knowledge bases larger than
    `max_constraints`.
    """
    n = len(kb.constraints)
    if n > max_constraints:
        raise SizeLimitError(f"{n} constraints exceed the enumeration bound {max_constraints}")
    if n == 0:
        return [frozenset()]

    names = [v.name for v in kb.variables]
    masks = [0] * n
    bit = 1
    count = 0
    for combo in itertools.product(*(v.domain for v in kb.variables)):
        assignment = dict(zip(names, combo))
        for i, c in enumerate(kb.constraints):
            if evaluate(c.expr, assignment):
                masks[i] |= bit
        bit <<= 1
        count += 1
    universe = (1 << count) - 1

    all_mask = universe
    for mask in masks:
        all_mask &= mask
    if all_mask == 0:
        raise InconsistentKBError("knowledge base is inconsistent")

    labels = kb.labels()
    minimal: list[set[int]] = []
    for size in range(n + 1):
        for combo in itertools.combinations(range(n), size):
            chosen = set(combo)
            if any(prev <= chosen for prev in minimal):
                continue
            mask = universe
            for i in combo:
                mask &= masks[i]
            # The subset preserves semantics iff it excludes exactly the
            # assignments the full set excludes.
            if mask == all_mask:
                minimal.append(chosen)
    return [frozenset(labels[i] for i in chosen) for chosen in minimal]
