import dataclasses
import random

import pytest

from coremin import (
    And,
    Atom,
    CmpOp,
    Constraint,
    Implies,
    KnowledgeBase,
    Not,
    Or,
    UnboundVariableError,
    Variable,
    evaluate,
    free_vars,
    is_complete,
    is_valid_configuration,
    negate_kb,
)
from helpers import (
    CAR_SOLUTION,
    all_assignments,
    car_constraints,
    car_kb,
    car_prime_kb,
    car_requirement_exprs,
    constraint_ca,
    random_expr,
    random_variables,
)


def test_free_vars_single_atom():
    assert free_vars(Atom("type", CmpOp.EQ, "city")) == {"type"}


def test_free_vars_implication():
    c1 = car_constraints()[0]
    assert free_vars(c1.expr) == {"4-wheel", "type"}


def test_free_vars_conjunction_of_car_constraints():
    whole = And(tuple(c.expr for c in car_constraints()))
    # pdc participates in no constraint
    assert free_vars(whole) == {"4-wheel", "type", "skibag", "fuel"}


def test_evaluate_golden_configuration_satisfies_c1():
    c1 = car_constraints()[0]
    assert evaluate(c1.expr, CAR_SOLUTION) is True


def test_evaluate_negation():
    assert evaluate(Not(Atom("pdc", CmpOp.EQ, "yes")), {"pdc": "yes"}) is False


def test_evaluate_ca_violated():
    # antecedent skibag != no holds, consequent disjunction fails on city
    assert evaluate(constraint_ca().expr, {"skibag": "yes", "type": "city"}) is False


def test_evaluate_unbound_variable():
    with pytest.raises(UnboundVariableError):
        evaluate(Atom("type", CmpOp.EQ, "city"), {"fuel": "4l"})


def test_is_complete():
    kb = car_kb()
    assert is_complete(CAR_SOLUTION, kb)
    assert not is_complete({}, kb)
    assert not is_complete({"type": "city"}, kb)


def test_is_valid_configuration_golden():
    assert is_valid_configuration(CAR_SOLUTION, car_kb(), car_requirement_exprs())


def test_is_valid_configuration_violation():
    swapped = dict(CAR_SOLUTION, type="limo")  # violates c3 and the type requirement
    assert not is_valid_configuration(swapped, car_kb(), car_requirement_exprs())


def test_is_valid_configuration_vacuous():
    empty = KnowledgeBase((), ())
    assert is_valid_configuration({}, empty, [])


def test_negate_single_constraint():
    c = car_constraints()[0]
    assert negate_kb([c]) == Not(c.expr)


def test_negate_kb_order():
    kb = car_prime_kb()
    negation = negate_kb(kb.constraints)
    assert isinstance(negation, Or)
    assert negation.children == tuple(Not(c.expr) for c in kb.constraints)


def test_negate_duplicates_equivalent_to_single_negation():
    base = Atom("type", CmpOp.EQ, "city")
    pair = [Constraint("c", base), Constraint("c2", base)]
    negation = negate_kb(pair)
    assert negation == Or((Not(base), Not(base)))
    for a in all_assignments(car_kb().variables):
        assert evaluate(negation, a) == evaluate(Not(base), a)


def test_negate_empty_is_error():
    with pytest.raises(ValueError):
        negate_kb([])


def test_de_morgan_soundness():
    # negating a constraint list flips the conjunction on every assignment
    rng = random.Random(1101)
    for _ in range(120):
        variables = random_variables(rng, max_vars=4, max_domain=4)
        constraints = [
            Constraint(f"c{i}", random_expr(rng, variables, depth=2))
            for i in range(rng.randint(1, 5))
        ]
        negation = negate_kb(constraints)
        for a in all_assignments(variables):
            conj = all(evaluate(c.expr, a) for c in constraints)
            assert evaluate(negation, a) == (not conj)


def test_kb_rejects_undeclared_variable():
    with pytest.raises(ValueError, match="undeclared"):
        KnowledgeBase(
            (Variable("x", ("a",)),),
            (Constraint("c", Atom("y", CmpOp.EQ, "a")),),
        )


def test_kb_rejects_out_of_domain_value():
    with pytest.raises(ValueError, match="domain"):
        KnowledgeBase(
            (Variable("x", ("a", "b")),),
            (Constraint("c", Atom("x", CmpOp.EQ, "z")),),
        )


def test_kb_rejects_duplicate_variable_names():
    with pytest.raises(ValueError, match="duplicate variable"):
        KnowledgeBase((Variable("x", ("a",)), Variable("x", ("b",))), ())


def test_kb_rejects_duplicate_labels():
    atom = Atom("x", CmpOp.EQ, "a")
    with pytest.raises(ValueError, match="duplicate constraint"):
        KnowledgeBase(
            (Variable("x", ("a",)),),
            (Constraint("c", atom), Constraint("c", atom)),
        )


def test_variable_invariants():
    with pytest.raises(ValueError):
        Variable("x", ())
    with pytest.raises(ValueError):
        Variable("x", ("a", "a"))
    with pytest.raises(ValueError):
        Variable("bad name", ("a",))


def test_connective_arity():
    atom = Atom("x", CmpOp.EQ, "a")
    with pytest.raises(ValueError):
        And((atom,))
    with pytest.raises(ValueError):
        Or((atom,))


def test_model_is_immutable():
    kb = car_kb()
    with pytest.raises(dataclasses.FrozenInstanceError):
        kb.variables = ()
    with pytest.raises(dataclasses.FrozenInstanceError):
        kb.constraints[0].label = "other"
