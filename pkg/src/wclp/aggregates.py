"""Ground aggregate atoms and the conditional-satisfaction answer sets.

An aggregate applies SUM, COUNT, AVG, MAX, or MIN to the values of its
selected elements (a multiset: duplicate atom/value pairs count twice) and
compares the outcome to an integer result. AVG, MAX and MIN over an empty
selection have no value and satisfy no comparison.

Rule bodies mix aggregates with plain literals; literals follow the normal
program reading, so inside the K operator a positive literal is checked
against the growing set and a not-atom against the candidate model.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Union

from .model import (
    Atom,
    Literal,
    ModelError,
    iter_interpretations,
    sort_models,
)
from .semantics import DEFAULT_ATOM_CAP, EnumerationCapError


class AggregateFunction(enum.Enum):
    SUM = "sum"
    COUNT = "count"
    AVG = "avg"
    MAX = "max"
    MIN = "min"

    def __str__(self) -> str:
        return self.value


class Relation(enum.Enum):
    EQ = "="
    NE = "!="
    LT = "<"
    GT = ">"
    LE = "<="
    GE = ">="

    def __str__(self) -> str:
        return self.value

    def holds(self, left, right) -> bool:
        if self is Relation.EQ:
            return left == right
        if self is Relation.NE:
            return left != right
        if self is Relation.LT:
            return left < right
        if self is Relation.GT:
            return left > right
        if self is Relation.LE:
            return left <= right
        return left >= right


@dataclass(frozen=True)
class AggregateElement:
    """One atom/value pair of an aggregate's domain multiset."""

    atom: Atom
    value: int

    def __post_init__(self):
        if isinstance(self.value, bool) or not isinstance(self.value, int):
            raise ModelError(f"aggregate values are integers, got {self.value!r}")

    def __str__(self) -> str:
        return f"{self.atom}:{self.value}"


@dataclass(frozen=True)
class AggregateAtom:
    """aggr{a1:v1, ..., an:vn} op result over a nonempty element multiset."""

    func: AggregateFunction
    elements: tuple
    op: Relation
    result: int

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if not self.elements:
            raise ModelError("aggregate needs at least one element")
        if isinstance(self.result, bool) or not isinstance(self.result, int):
            raise ModelError(f"aggregate result is an integer, got {self.result!r}")

    def domain(self) -> frozenset:
        return frozenset(el.atom for el in self.elements)

    def selected_values(self, interp: frozenset) -> list:
        """Values of elements whose atom holds, with multiplicity."""
        return [el.value for el in self.elements if el.atom in interp]

    def satisfied_by(self, interp: frozenset) -> bool:
        values = self.selected_values(interp)
        if self.func is AggregateFunction.COUNT:
            outcome = len(values)
        elif self.func is AggregateFunction.SUM:
            outcome = sum(values)
        elif not values:
            return False  # AVG/MAX/MIN have no value on an empty selection
        elif self.func is AggregateFunction.AVG:
            outcome = Fraction(sum(values), len(values))
        elif self.func is AggregateFunction.MAX:
            outcome = max(values)
        else:
            outcome = min(values)
        return self.op.holds(outcome, self.result)

    def __str__(self) -> str:
        inner = ", ".join(str(el) for el in self.elements)
        return f"{self.func}{{{inner}}} {self.op} {self.result}"


def cond_satisfies_agg(base: frozenset, context: frozenset, agg: AggregateAtom) -> bool:
    """`base` satisfies the aggregate, and so does every set between base and
    `context` restricted to the aggregate's domain."""
    if not base <= context:
        raise ModelError("conditional satisfaction needs base <= context")
    dom = agg.domain()
    floor = base & dom
    if not agg.satisfied_by(floor):
        return False
    free = sorted((context & dom) - floor)
    for k in range(1, len(free) + 1):
        for extra in combinations(free, k):
            if not agg.satisfied_by(floor | frozenset(extra)):
                return False
    return True


BodyItem = Union[AggregateAtom, Literal]


@dataclass(frozen=True)
class AggregateRule:
    """h <- items, where each item is an aggregate or a plain literal."""

    head: Atom
    body: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "body", tuple(self.body))

    def atoms(self) -> frozenset:
        out = {self.head}
        for item in self.body:
            if isinstance(item, AggregateAtom):
                out |= item.domain()
            else:
                out.add(item.atom)
        return frozenset(out)

    def body_satisfied_by(self, interp: frozenset) -> bool:
        return all(_item_satisfied(interp, item) for item in self.body)

    def satisfied_by(self, interp: frozenset) -> bool:
        return not self.body_satisfied_by(interp) or self.head in interp

    def __str__(self) -> str:
        if not self.body:
            return f"{self.head}."
        return f"{self.head} :- " + ", ".join(str(item) for item in self.body) + "."


@dataclass(frozen=True)
class AggregateProgram:
    rules: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))

    def atoms(self) -> frozenset:
        out = set()
        for rule in self.rules:
            out |= rule.atoms()
        return frozenset(out)

    def satisfied_by(self, interp: frozenset) -> bool:
        return all(rule.satisfied_by(interp) for rule in self.rules)

    def __str__(self) -> str:
        return "".join(f"{rule}\n" for rule in self.rules)


def _item_satisfied(interp: frozenset, item: BodyItem) -> bool:
    if isinstance(item, AggregateAtom):
        return item.satisfied_by(interp)
    if item.negated:
        return item.atom not in interp
    return item.atom in interp


def _item_cond_satisfied(base: frozenset, context: frozenset, item: BodyItem) -> bool:
    if isinstance(item, AggregateAtom):
        return cond_satisfies_agg(base, context, item)
    if item.negated:
        return item.atom not in context
    return item.atom in base


def agg_kp_fixpoint(program: AggregateProgram, context: frozenset) -> frozenset:
    """Least fixpoint of the K operator for an aggregate program."""
    derived: frozenset = frozenset()
    pending = list(program.rules)
    changed = True
    while changed:
        changed = False
        remaining = []
        for rule in pending:
            if all(_item_cond_satisfied(derived, context, item) for item in rule.body):
                derived = derived | {rule.head}
                changed = True
            else:
                remaining.append(rule)
        pending = remaining
    return derived


def is_agg_answer_set(program: AggregateProgram, interp: frozenset) -> bool:
    if not interp <= program.atoms():
        return False
    if not program.satisfied_by(interp):
        return False
    return agg_kp_fixpoint(program, interp) == interp


def agg_answer_sets(program: AggregateProgram, cap: int = DEFAULT_ATOM_CAP) -> list:
    """All answer sets of the aggregate program, in deterministic order."""
    atoms = sorted(program.atoms())
    if len(atoms) > cap:
        raise EnumerationCapError(len(atoms), cap)
    return sort_models(
        m for m in iter_interpretations(atoms) if is_agg_answer_set(program, m)
    )
