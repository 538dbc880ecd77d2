"""Data model for finite-domain configuration knowledge bases.

A knowledge base couples an ordered list of finite-domain variables with an
ordered, labeled list of boolean constraints over them.  Constraint order is
significant: the core-extraction algorithms treat it as a strict preference
order, so two knowledge bases with the same constraints in different orders
are different objects.

All types are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Union

# Identifier rule shared with the text format: a leading alphanumeric or
# underscore, then alphanumerics, underscores, hyphens, or `#` (used by the
# benchmark generator to suffix duplicated constraint labels, e.g. `c1#2`).
IDENT_RE = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_#-]*\Z")

#: A (possibly partial) mapping of variable names to domain values.
Assignment = dict[str, str]


class UnboundVariableError(LookupError):
    """An expression was evaluated against an assignment missing a variable."""


def _check_ident(text: str, what: str) -> None:
    if not IDENT_RE.match(text):
        raise ValueError(f"invalid {what}: {text!r}")


class CmpOp(Enum):
    EQ = "="
    NEQ = "!="


@dataclass(frozen=True)
class Atom:
    """Comparison of one variable against one domain value."""

    var: str
    op: CmpOp
    value: str

    def __post_init__(self) -> None:
        _check_ident(self.var, "variable name")
        _check_ident(self.value, "value")


@dataclass(frozen=True)
class Not:
    child: "Expr"


@dataclass(frozen=True)
class And:
    children: tuple["Expr", ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) < 2:
            raise ValueError("And requires at least two children")


@dataclass(frozen=True)
class Or:
    children: tuple["Expr", ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) < 2:
            raise ValueError("Or requires at least two children")


@dataclass(frozen=True)
class Implies:
    antecedent: "Expr"
    consequent: "Expr"


#: Boolean expression tree; the representation of constraints.
Expr = Union[Atom, Not, And, Or, Implies]


@dataclass(frozen=True)
class Variable:
    """A named variable with an ordered finite domain of distinct values."""

    name: str
    domain: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "domain", tuple(self.domain))
        _check_ident(self.name, "variable name")
        if not self.domain:
            raise ValueError(f"variable {self.name!r} has an empty domain")
        for value in self.domain:
            _check_ident(value, "value")
        if len(set(self.domain)) != len(self.domain):
            raise ValueError(f"variable {self.name!r} has duplicate domain values")


@dataclass(frozen=True)
class Constraint:
    """A labeled constraint expression."""

    label: str
    expr: Expr

    def __post_init__(self) -> None:
        _check_ident(self.label, "constraint label")


@dataclass(frozen=True)
class KnowledgeBase:
    """Ordered variables plus an ordered, labeled constraint list.

    Construction validates the whole structure: variable names and constraint
    labels must be distinct, and every atom must reference a declared variable
    and a value from its domain.
    """

    variables: tuple[Variable, ...]
    constraints: tuple[Constraint, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names in knowledge base")
        labels = [c.label for c in self.constraints]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate constraint labels in knowledge base")
        domains = {v.name: frozenset(v.domain) for v in self.variables}
        for c in self.constraints:
            validate_expr(c.expr, domains, where=f"constraint {c.label!r}")

    def labels(self) -> tuple[str, ...]:
        return tuple(c.label for c in self.constraints)

    def exprs(self) -> tuple[Expr, ...]:
        return tuple(c.expr for c in self.constraints)


def validate_expr(expr: Expr, domains: dict[str, frozenset[str]], where: str = "expression") -> None:
    """Reject atoms referencing undeclared variables or out-of-domain values."""
    if isinstance(expr, Atom):
        if expr.var not in domains:
            raise ValueError(f"{where} references undeclared variable {expr.var!r}")
        if expr.value not in domains[expr.var]:
            raise ValueError(
                f"{where} references value {expr.value!r} outside the domain of {expr.var!r}"
            )
    elif isinstance(expr, Not):
        validate_expr(expr.child, domains, where)
    elif isinstance(expr, (And, Or)):
        for child in expr.children:
            validate_expr(child, domains, where)
    elif isinstance(expr, Implies):
        validate_expr(expr.antecedent, domains, where)
        validate_expr(expr.consequent, domains, where)
    else:
        raise TypeError(f"not an expression node: {expr!r}")


def free_vars(expr: Expr) -> set[str]:
    """Names of all variables referenced by atoms in the expression."""
    out: set[str] = set()
    _collect_vars(expr, out)
    return out


def _collect_vars(expr: Expr, out: set[str]) -> None:
    if isinstance(expr, Atom):
        out.add(expr.var)
    elif isinstance(expr, Not):
        _collect_vars(expr.child, out)
    elif isinstance(expr, (And, Or)):
        for child in expr.children:
            _collect_vars(child, out)
    else:
        _collect_vars(expr.antecedent, out)
        _collect_vars(expr.consequent, out)


def evaluate(expr: Expr, assignment: Assignment) -> bool:
    """Evaluate an expression under an assignment binding all its variables.

    Standard boolean semantics; an implication is true whenever its
    antecedent is false.  Raises UnboundVariableError if the assignment
    leaves a referenced variable unbound.
    """
    if isinstance(expr, Atom):
        try:
            bound = assignment[expr.var]
        except KeyError:
            raise UnboundVariableError(expr.var) from None
        return bound == expr.value if expr.op is CmpOp.EQ else bound != expr.value
    if isinstance(expr, Not):
        return not evaluate(expr.child, assignment)
    if isinstance(expr, And):
        return all(evaluate(child, assignment) for child in expr.children)
    if isinstance(expr, Or):
        return any(evaluate(child, assignment) for child in expr.children)
    return not evaluate(expr.antecedent, assignment) or evaluate(expr.consequent, assignment)


def is_complete(assignment: Assignment, kb: KnowledgeBase) -> bool:
    """True iff every variable of the knowledge base is bound."""
    return all(v.name in assignment for v in kb.variables)


def is_valid_configuration(
    assignment: Assignment, kb: KnowledgeBase, extra: Iterable[Expr] = ()
) -> bool:
    """True iff the assignment is complete and satisfies every constraint.

    `extra` carries additional requirement expressions (over the same
    variables) that must hold as well.
    """
    if not is_complete(assignment, kb):
        return False
    if not all(evaluate(c.expr, assignment) for c in kb.constraints):
        return False
    return all(evaluate(e, assignment) for e in extra)


def negate_kb(constraints: Iterable[Constraint]) -> Expr:
    """Single expression violated exactly by the models of all constraints.

    Returns the disjunction of the negated constraint expressions, in input
    order; a single constraint yields a bare negation.  An empty input has no
    well-defined negation and is an error: callers must special-case empty
    knowledge bases instead.
    """
    items = list(constraints)
    if not items:
        raise ValueError("cannot negate an empty constraint list")
    if len(items) == 1:
        return Not(items[0].expr)
    return Or(tuple(Not(c.expr) for c in items))
