"""Shared builders, paper example programs, and random program generators."""

from __future__ import annotations

import random

from wclp.model import (
    NEG_INF,
    POS_INF,
    Atom,
    Literal,
    WeightConstraint,
    WeightProgram,
    WeightRule,
    unit_constraint,
    wc,
    wlit,
)
from wclp.aggregates import (
    AggregateAtom,
    AggregateElement,
    AggregateFunction,
    AggregateProgram,
    AggregateRule,
    Relation,
)


def atom(name: str) -> Atom:
    return Atom(name)


def atoms(*names: str) -> frozenset:
    return frozenset(Atom(n) for n in names)


def fact(name: str) -> WeightRule:
    return WeightRule(unit_constraint(Literal(Atom(name))))


def rule(head_name: str, *body: WeightConstraint) -> WeightRule:
    return WeightRule(unit_constraint(Literal(Atom(head_name))), tuple(body))


def lit_wc(name: str, negated: bool = False) -> WeightConstraint:
    return unit_constraint(Literal(Atom(name), negated))


def names(models) -> list:
    return [",".join(sorted(a.name for a in m)) for m in models]


# --- the running examples -------------------------------------------------


def example3_program() -> WeightProgram:
    # a <- [not a=1] 0
    return WeightProgram([rule("a", wc(None, [wlit("a", 1, True)], 0))])


def example4_program() -> WeightProgram:
    # adds f <- not f, not a
    return WeightProgram([
        rule("a", wc(None, [wlit("a", 1, True)], 0)),
        rule("f", lit_wc("f", True), lit_wc("a", True)),
    ])


def example5_program() -> WeightProgram:
    # b <- 1 [not b=1]    and    b <- [not b=1] 0
    return WeightProgram([
        rule("b", wc(1, [wlit("b", 1, True)])),
        rule("b", wc(None, [wlit("b", 1, True)], 0)),
    ])


def section4_program() -> WeightProgram:
    # a <- 0 [not a=3] 2
    return WeightProgram([rule("a", wc(0, [wlit("a", 3, True)], 2))])


def sum_section22() -> AggregateAtom:
    # SUM over the multiset domain {-1, 1, 1, 2} compared >= 2
    return AggregateAtom(
        AggregateFunction.SUM,
        (
            AggregateElement(Atom("p(m1)"), -1),
            AggregateElement(Atom("p(1)"), 1),
            AggregateElement(Atom("p(1)"), 1),
            AggregateElement(Atom("p(2)"), 2),
        ),
        Relation.GE,
        2,
    )


# --- random generators (fixed-seed streams drive the theorem suites) ------

WEIGHTS = (0, 1, 2, 3)
LOWERS = (NEG_INF, 0, 1, 2, 3, 4)
UPPERS = (POS_INF, POS_INF, 0, 1, 2, 3, 4)  # biased toward upper-free


def gen_constraint(rng: random.Random, pool, max_elements: int = 3,
                   positive_only: bool = False) -> WeightConstraint:
    count = rng.randint(0, max_elements)
    polarity = {}  # the correspondence theorems presume one polarity per atom
    elements = []
    for _ in range(count):
        name = rng.choice(pool)
        if name not in polarity:
            polarity[name] = False if positive_only else rng.random() < 0.4
        elements.append(wlit(name, rng.choice(WEIGHTS), polarity[name]))
    return wc(rng.choice(LOWERS), elements, rng.choice(UPPERS))


def gen_rule(rng: random.Random, pool, positive_heads: bool = False) -> WeightRule:
    if rng.random() < 0.6:
        head = unit_constraint(Literal(Atom(rng.choice(pool))))
    else:
        head = gen_constraint(rng, pool, max_elements=2, positive_only=positive_heads)
    body = tuple(gen_constraint(rng, pool) for _ in range(rng.randint(0, 2)))
    return WeightRule(head, body)


def gen_program(rng: random.Random, max_atoms: int = 6, max_rules: int = 5,
                positive_heads: bool = False) -> WeightProgram:
    pool = [f"a{i}" for i in range(1, rng.randint(2, max_atoms) + 1)]
    return WeightProgram(tuple(
        gen_rule(rng, pool, positive_heads) for _ in range(rng.randint(1, max_rules))
    ))


_AGG_OPS = (Relation.GE, Relation.GT, Relation.LE, Relation.LT, Relation.EQ)


def gen_aggregate_program(rng: random.Random, max_atoms: int = 4,
                          max_rules: int = 3) -> AggregateProgram:
    pool = [f"p{i}" for i in range(1, rng.randint(2, max_atoms) + 1)]
    rules = []
    minmax_left = 1  # MAX/MIN add 2n fresh atoms each; keep the pipeline enumerable
    for _ in range(rng.randint(1, max_rules)):
        head = Atom(rng.choice(pool))
        if rng.random() < 0.3:
            rules.append(AggregateRule(head, ()))
            continue
        body = []
        for _ in range(rng.randint(1, 2)):
            if rng.random() < 0.35:
                body.append(Literal(Atom(rng.choice(pool)), rng.random() < 0.5))
                continue
            funcs = [AggregateFunction.SUM, AggregateFunction.COUNT, AggregateFunction.AVG]
            if minmax_left:
                funcs += [AggregateFunction.MAX, AggregateFunction.MIN]
            func = rng.choice(funcs)
            if func in (AggregateFunction.MAX, AggregateFunction.MIN):
                minmax_left -= 1
            # one value per atom (the encodings need it); duplicate pairs
            # express multisets
            value_of = {}
            elements = []
            for _ in range(rng.randint(1, 3)):
                name = rng.choice(pool)
                if name not in value_of:
                    value_of[name] = rng.randint(-2, 3)
                elements.append(AggregateElement(Atom(name), value_of[name]))
            elements = tuple(elements)
            ops = _AGG_OPS + ((Relation.NE,) if func is AggregateFunction.COUNT else ())
            body.append(AggregateAtom(func, elements, rng.choice(ops), rng.randint(-1, 3)))
        rules.append(AggregateRule(head, tuple(body)))
    return AggregateProgram(tuple(rules))
