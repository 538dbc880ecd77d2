"""Shared test utilities.

Two independent brute-force oracles (assignment enumeration over
`evaluate`, never the backtracking solver) plus seeded random generators
for expressions and consistent knowledge bases, and the car knowledge base
built programmatically as the golden reference.
"""

from __future__ import annotations

import itertools
import random

from coremin import (
    And,
    Atom,
    CmpOp,
    Constraint,
    Expr,
    Implies,
    KnowledgeBase,
    Not,
    Or,
    Variable,
    evaluate,
)


def all_assignments(variables):
    """Complete assignments in deterministic order: declaration-major,
    domain order within each variable (the solver's search order)."""
    names = [v.name for v in variables]
    for combo in itertools.product(*(v.domain for v in variables)):
        yield dict(zip(names, combo))


def enum_consistent(variables, exprs) -> bool:
    """Exhaustive-enumeration consistency oracle."""
    return any(
        all(evaluate(e, a) for e in exprs) for a in all_assignments(variables)
    )


def enum_first_solution(variables, exprs):
    """First satisfying complete assignment in enumeration order, if any."""
    for a in all_assignments(variables):
        if all(evaluate(e, a) for e in exprs):
            return a
    return None


def random_expr(rng: random.Random, variables, depth: int = 2) -> Expr:
    roll = rng.random()
    if depth <= 0 or roll < 0.45:
        v = rng.choice(variables)
        op = CmpOp.EQ if rng.random() < 0.6 else CmpOp.NEQ
        return Atom(v.name, op, rng.choice(v.domain))
    if roll < 0.62:
        return Implies(
            random_expr(rng, variables, depth - 1),
            random_expr(rng, variables, depth - 1),
        )
    if roll < 0.74:
        return Not(random_expr(rng, variables, depth - 1))
    node = And if roll < 0.87 else Or
    width = rng.randint(2, 3)
    return node(tuple(random_expr(rng, variables, depth - 1) for _ in range(width)))


def random_variables(rng: random.Random, max_vars: int = 4, max_domain: int = 3):
    values = ("a", "b", "c", "d")
    return tuple(
        Variable(f"v{i}", values[: rng.randint(2, max_domain)])
        for i in range(rng.randint(1, max_vars))
    )


def random_consistent_kb(
    rng: random.Random,
    n_constraints: int,
    max_vars: int = 4,
    max_domain: int = 3,
    depth: int = 2,
) -> KnowledgeBase:
    """Random KB kept consistent by construction (checked by enumeration)."""
    variables = random_variables(rng, max_vars, max_domain)
    assigns = list(all_assignments(variables))
    alive = list(range(len(assigns)))
    constraints = []
    for i in range(n_constraints):
        for _ in range(80):
            expr = random_expr(rng, variables, depth)
            keep = [j for j in alive if evaluate(expr, assigns[j])]
            if keep:
                alive = keep
                constraints.append(Constraint(f"c{i}", expr))
                break
        else:  # pragma: no cover - vanishingly unlikely
            break
    return KnowledgeBase(variables, tuple(constraints))


# -- the car knowledge base, built by hand ----------------------------------

CAR_SOLUTION = {"4-wheel": "no", "fuel": "4l", "type": "city", "skibag": "no", "pdc": "yes"}


def car_variables():
    return (
        Variable("type", ("city", "limo", "combi", "xdrive")),
        Variable("fuel", ("4l", "6l", "10l")),
        Variable("skibag", ("yes", "no")),
        Variable("4-wheel", ("yes", "no")),
        Variable("pdc", ("yes", "no")),
    )


def _eq(var, value):
    return Atom(var, CmpOp.EQ, value)


def _neq(var, value):
    return Atom(var, CmpOp.NEQ, value)


def car_constraints():
    return (
        Constraint("c1", Implies(_eq("4-wheel", "yes"), _eq("type", "xdrive"))),
        Constraint("c2", Implies(_eq("skibag", "yes"), _neq("type", "city"))),
        Constraint("c3", Implies(_eq("fuel", "4l"), _eq("type", "city"))),
        Constraint("c4", Implies(_eq("fuel", "6l"), _neq("type", "xdrive"))),
        Constraint("c5", Implies(_eq("type", "city"), _neq("fuel", "10l"))),
    )


def constraint_ca():
    return Constraint(
        "ca",
        Implies(
            _neq("skibag", "no"),
            Or((_eq("type", "limo"), _eq("type", "combi"), _eq("type", "xdrive"))),
        ),
    )


def car_kb() -> KnowledgeBase:
    return KnowledgeBase(car_variables(), car_constraints())


def car_prime_kb() -> KnowledgeBase:
    return KnowledgeBase(car_variables(), (constraint_ca(), *car_constraints()))


def car_requirement_exprs():
    return [
        _eq("4-wheel", "no"),
        _eq("fuel", "4l"),
        _eq("type", "city"),
        _eq("skibag", "no"),
        _eq("pdc", "yes"),
    ]


def corediag_call_bound(n: int, core_size: int) -> float:
    """Ceiling-rounded worst-case TP-call bound with +2 slack."""
    import math

    ratio = n / max(core_size, 1)
    return 2 * core_size * math.ceil(math.log2(ratio)) + 2 * core_size + 2
