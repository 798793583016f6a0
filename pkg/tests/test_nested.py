import random

import pytest

from wclp.model import Atom, iter_interpretations
from wclp.nested import (
    BOTTOM,
    TOP,
    And,
    AtomRef,
    Bottom,
    NestedProgram,
    NestedRule,
    Not,
    Or,
    Top,
    conj,
    disj,
    formula_atoms,
    formula_reduct,
    is_stable_model_ne,
    program_reduct,
    ref,
    satisfies_formula,
    stable_models_ne,
)
from wclp.semantics import EnumerationCapError
from helpers import atoms, example3_program, names

a, b = ref(Atom("a")), ref(Atom("b"))


def test_satisfaction_clauses():
    assert satisfies_formula(frozenset(), Not(a))
    assert satisfies_formula(atoms("a"), Not(Not(a)))
    assert satisfies_formula(atoms("a"), TOP)
    assert not satisfies_formula(atoms("a"), BOTTOM)
    assert satisfies_formula(atoms("a"), Or((And((a, Not(b))), And((b, Not(a))))))


def test_example7_formula_models():
    f = Or((And((a, Not(b))), And((b, Not(a)))))
    sat = [m for m in iter_interpretations([Atom("a"), Atom("b")]) if satisfies_formula(m, f)]
    assert names(sat) == ["a", "b"]


def test_empty_connectives():
    assert satisfies_formula(frozenset(), And(()))
    assert not satisfies_formula(frozenset(), Or(()))
    assert conj(()) == TOP and disj(()) == BOTTOM
    assert conj((a,)) == a and disj((a,)) == a


def test_reduct_clauses():
    assert formula_reduct(Not(a), frozenset()) == TOP
    assert formula_reduct(Not(a), atoms("a")) == BOTTOM
    assert formula_reduct(Not(Not(a)), atoms("a")) == TOP
    assert formula_reduct(a, atoms("a")) == a


def _negation_free(f):
    match f:
        case Top() | Bottom() | AtomRef(_):
            return True
        case Not(_):
            return False
        case And(parts) | Or(parts):
            return all(_negation_free(p) for p in parts)


def random_formula(rng, pool, depth=3):
    if depth == 0 or rng.random() < 0.3:
        return rng.choice([TOP, BOTTOM] + [ref(Atom(x)) for x in pool])
    kind = rng.randrange(3)
    if kind == 0:
        return Not(random_formula(rng, pool, depth - 1))
    parts = tuple(random_formula(rng, pool, depth - 1) for _ in range(rng.randint(0, 3)))
    return And(parts) if kind == 1 else Or(parts)


def test_reduct_negation_free_and_idempotent():
    rng = random.Random(3)
    pool = ["a", "b", "c"]
    for _ in range(200):
        f = random_formula(rng, pool)
        for m in iter_interpretations([Atom(x) for x in pool]):
            red = formula_reduct(f, m)
            assert _negation_free(red)
            assert formula_reduct(red, m) == red
            # self-satisfaction carries across the reduct
            assert satisfies_formula(m, f) == satisfies_formula(m, red)


def test_negation_free_reducts_are_monotone():
    rng = random.Random(4)
    pool = [Atom(x) for x in ("a", "b", "c")]
    for _ in range(200):
        f = random_formula(rng, [x.name for x in pool])
        for m in iter_interpretations(pool):
            red = formula_reduct(f, m)
            if satisfies_formula(m, red):
                for n in iter_interpretations(pool):
                    if m <= n:
                        assert satisfies_formula(n, red)


def test_stable_models_self_loop():
    p = NestedProgram([NestedRule(a, a)])
    assert names(stable_models_ne(p)) == [""]


def test_stable_models_double_negation():
    p = NestedProgram([NestedRule(a, Not(Not(a)))])
    assert names(stable_models_ne(p)) == ["", "a"]


def test_stable_models_choice_head():
    p = NestedProgram([NestedRule(Or((a, Not(a))), TOP)])
    assert names(stable_models_ne(p)) == ["", "a"]


def test_stable_models_empty_program():
    assert stable_models_ne(NestedProgram()) == [frozenset()]


def test_stable_models_of_translations_of_example3():
    from wclp.transforms import fl_program, ne_program

    p = example3_program()
    assert names(stable_models_ne(ne_program(p))) == [""]
    assert names(stable_models_ne(fl_program(p))) == ["", "a"]


def test_program_reduct_shape():
    p = NestedProgram([NestedRule(a, Not(b))])
    red = program_reduct(p, atoms("b"))
    assert red.rules[0].body == BOTTOM


def test_minimality_is_checked():
    p = NestedProgram([NestedRule(a, TOP), NestedRule(b, b)])
    assert names(stable_models_ne(p)) == ["a"]
    assert not is_stable_model_ne(p, atoms("a", "b"))


def test_formula_atoms():
    f = Or((And((a, Not(b))), TOP))
    assert formula_atoms(f) == atoms("a", "b")


def test_ne_cap_refusal():
    p = NestedProgram([NestedRule(ref(Atom(f"x{i}")), TOP) for i in range(23)])
    with pytest.raises(EnumerationCapError):
        stable_models_ne(p)
