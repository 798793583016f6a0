"""Two semantics for weight constraint programs, plus the checkers.

Stable models: reduct of every constraint against the candidate, then the
least fixpoint of the one-step derivation operator over the (monotone,
basic) reduct program.

Answer sets: conditional satisfaction against the candidate, iterated as
the K operator over the program instance.

Also here: the strong-satisfiability checks (exact and the fast syntactic
sufficient conditions) and the circular-justification witness search.

All semantic entry points eliminate negative weights up front; callers may
hand over constraints in either form.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Optional

from .model import (
    POS_INF,
    Bounds,
    Literal,
    ModelError,
    RefusalError,
    WeightConstraint,
    WeightProgram,
    WeightRule,
    eliminate_negative_weights,
    head_atom,
    iter_interpretations,
    sort_models,
    unit_constraint,
)

#: Largest atom count accepted by the enumeration solvers.
DEFAULT_ATOM_CAP = 22


class EnumerationCapError(RefusalError):
    """Raised instead of enumerating more than 2**cap candidate models."""

    def __init__(self, count: int, cap: int):
        super().__init__(
            f"program has {count} atoms, above the enumeration cap of {cap}; "
            "raise the cap explicitly to search anyway"
        )
        self.count = count
        self.cap = cap


class ClosureContractError(RefusalError):
    """A fixpoint operator was applied outside its contract."""


def reduct_constraint(constraint: WeightConstraint, interp: frozenset) -> WeightConstraint:
    """Keep the positive elements; lower the bound by the weight of the
    negative elements falsified by `interp`; drop the upper bound."""
    constraint = eliminate_negative_weights(constraint)
    lower = constraint.bounds.lower
    elements = []
    for el in constraint.elements:
        if el.literal.negated:
            if el.literal.atom not in interp:
                lower = lower - el.weight
        else:
            elements.append(el)
    return WeightConstraint(Bounds(lower, POS_INF), tuple(elements))


def reduct_program(program: WeightProgram, interp: frozenset) -> WeightProgram:
    """The reduct: one rule p <- reduced body per positive head literal
    p in `interp`, kept only when every body value stays under its upper
    bound. The result is basic and monotone."""
    rules = []
    for rule in program.rules:
        head = eliminate_negative_weights(rule.head)
        body = tuple(eliminate_negative_weights(c) for c in rule.body)
        heads = sorted(head.positive_atoms() & interp)
        if not heads:
            continue
        if any(c.value(interp) > c.bounds.upper for c in body):
            continue
        reduced = tuple(reduct_constraint(c, interp) for c in body)
        for atom in heads:
            rules.append(WeightRule(unit_constraint(Literal(atom)), reduced))
    return WeightProgram(tuple(rules))


def _require_monotone_basic(program: WeightProgram) -> None:
    for rule in program.rules:
        unit = rule.head.is_unit_for()
        if unit is None or unit.negated:
            raise ClosureContractError(f"rule is not basic: {rule}")
        for constraint in rule.body:
            if constraint.bounds.upper != POS_INF:
                raise ClosureContractError(f"rule body has an upper bound: {rule}")
            for el in constraint.elements:
                if el.literal.negated or el.weight < 0:
                    raise ClosureContractError(f"rule body is not monotone: {rule}")


def tp_step(program: WeightProgram, current: frozenset) -> frozenset:
    """One application of the derivation operator to a monotone basic program."""
    return frozenset(
        head_atom(rule) for rule in program.rules if rule.body_satisfied_by(current)
    )


def tp_closure(program: WeightProgram) -> frozenset:
    """Least fixpoint of the derivation operator from the empty set.

    Refuses programs that are not basic and monotone; iteration count is
    bounded by the number of atoms plus one.
    """
    _require_monotone_basic(program)
    derived: set = set()
    pending = list(program.rules)
    changed = True
    while changed:
        changed = False
        remaining = []
        for rule in pending:
            if rule.body_satisfied_by(derived):
                derived.add(head_atom(rule))
                changed = True
            else:
                remaining.append(rule)
        pending = remaining
    return frozenset(derived)


def is_stable_model(program: WeightProgram, interp: frozenset) -> bool:
    """interp is a model of the program and the deductive closure of its reduct."""
    if not interp <= program.atoms():
        return False
    if not program.satisfied_by(interp):
        return False
    return tp_closure(reduct_program(program, interp)) == interp


def _enumerate(program_atoms, predicate: Callable, cap: int) -> list:
    atoms = sorted(program_atoms)
    if len(atoms) > cap:
        raise EnumerationCapError(len(atoms), cap)
    return sort_models(m for m in iter_interpretations(atoms) if predicate(m))


def stable_models(program: WeightProgram, cap: int = DEFAULT_ATOM_CAP) -> list:
    """All stable models, in deterministic order."""
    return _enumerate(program.atoms(), lambda m: is_stable_model(program, m), cap)


def cond_satisfies_wc(base: frozenset, context: frozenset, constraint: WeightConstraint) -> bool:
    """Conditional satisfaction: `base` satisfies the constraint and so does
    every set between base and `context`, restricted to the constraint's
    domain (inclusive at both ends)."""
    if not base <= context:
        raise ModelError("conditional satisfaction needs base <= context")
    constraint = eliminate_negative_weights(constraint)
    dom = constraint.domain()
    floor = base & dom
    if not constraint.satisfied_by(floor):
        return False
    free = sorted((context & dom) - floor)
    for k in range(1, len(free) + 1):
        for extra in combinations(free, k):
            if not constraint.satisfied_by(floor | frozenset(extra)):
                return False
    return True


def instance_of(program: WeightProgram, interp: frozenset) -> WeightProgram:
    """The basic instance: for each rule whose head `interp` satisfies, one
    rule a <- body per positive head atom a in `interp`."""
    rules = []
    for rule in program.rules:
        head = eliminate_negative_weights(rule.head)
        if not head.satisfied_by(interp):
            continue
        body = tuple(eliminate_negative_weights(c) for c in rule.body)
        for atom in sorted(head.positive_atoms() & interp):
            rules.append(WeightRule(unit_constraint(Literal(atom)), body))
    return WeightProgram(tuple(rules))


def kp_step(program: WeightProgram, current: frozenset, context: frozenset) -> frozenset:
    """One application of the K operator: heads of rules whose whole body is
    conditionally satisfied by `current` with respect to `context`."""
    out = set()
    for rule in program.rules:
        if all(cond_satisfies_wc(current, context, c) for c in rule.body):
            out.add(head_atom(rule))
    return frozenset(out)


def kp_fixpoint(program: WeightProgram, context: frozenset) -> frozenset:
    """Least fixpoint of R -> K(R, context) over a basic program."""
    for rule in program.rules:
        unit = rule.head.is_unit_for()
        if unit is None or unit.negated:
            raise ClosureContractError(f"rule is not basic: {rule}")
    derived: frozenset = frozenset()
    pending = list(program.rules)
    changed = True
    while changed:
        changed = False
        remaining = []
        for rule in pending:
            # K is monotone in its first argument, so a fired rule stays fired
            if all(cond_satisfies_wc(derived, context, c) for c in rule.body):
                derived = derived | {head_atom(rule)}
                changed = True
            else:
                remaining.append(rule)
        pending = remaining
    return derived


def is_answer_set(program: WeightProgram, interp: frozenset) -> bool:
    """interp is a model of the program and the K fixpoint of its instance."""
    if not interp <= program.atoms():
        return False
    if not program.satisfied_by(interp):
        return False
    return kp_fixpoint(instance_of(program, interp), interp) == interp


def answer_sets(program: WeightProgram, cap: int = DEFAULT_ATOM_CAP) -> list:
    """All answer sets, in deterministic order."""
    return _enumerate(program.atoms(), lambda m: is_answer_set(program, m), cap)


def strongly_satisfiable_by(constraint: WeightConstraint, interp: frozenset) -> bool:
    """If `interp` satisfies the constraint, removing any subset of its
    negatively-occurring atoms must keep the value under the upper bound."""
    constraint = eliminate_negative_weights(constraint)
    if not constraint.satisfied_by(interp):
        return True
    upper = constraint.bounds.upper
    removable = sorted(constraint.neg_members(interp))
    for k in range(len(removable) + 1):
        for drop in combinations(removable, k):
            if constraint.value(interp - frozenset(drop)) > upper:
                return False
    return True


def strongly_satisfiable(constraint: WeightConstraint) -> bool:
    """Exact decision over every interpretation; checking the subsets of the
    constraint's domain suffices because values depend only on that part."""
    constraint = eliminate_negative_weights(constraint)
    dom = sorted(constraint.domain())
    return all(
        strongly_satisfiable_by(constraint, interp) for interp in iter_interpretations(dom)
    )


def syntactically_strongly_satisfiable(constraint: WeightConstraint) -> bool:
    """Fast sufficient conditions: only atoms occur, or the total weight
    already fits under the upper bound. Never true when the exact check is
    false."""
    constraint = eliminate_negative_weights(constraint)
    if not any(el.literal.negated for el in constraint.elements):
        return True
    return constraint.total_weight() <= constraint.bounds.upper


def strongly_satisfiable_program(program: WeightProgram) -> bool:
    """Every constraint in a rule body is strongly satisfiable."""
    return all(
        strongly_satisfiable(constraint) for rule in program.rules for constraint in rule.body
    )


def circularity_witness(program: WeightProgram, interp: frozenset) -> Optional[frozenset]:
    """Search for a nonempty U inside the stable model such that no member of
    U keeps head support from a rule whose body survives removing U.

    Smallest witness first, lexicographic tie-break. Returns None for a
    non-circular model. Raises if `interp` is not a stable model.
    """
    if not is_stable_model(program, interp):
        raise ModelError(f"circularity is defined on stable models only; got {set(interp)!r}")
    supports = []  # (positive head atoms, body) per rule, normalized
    for rule in program.rules:
        head = eliminate_negative_weights(rule.head)
        body = tuple(eliminate_negative_weights(c) for c in rule.body)
        supports.append((head.positive_atoms(), body))
    members = sorted(interp)
    for size in range(1, len(members) + 1):
        for chosen in combinations(members, size):
            candidate = frozenset(chosen)
            rest = interp - candidate
            if all(
                not all(c.satisfied_by(rest) for c in body)
                for atom in candidate
                for heads, body in supports
                if atom in heads
            ):
                return candidate
    return None


@dataclass(frozen=True)
class SemanticsReport:
    """Verdicts for one candidate model under both semantics.

    Circularity only applies to stable models; it is None otherwise.
    """

    model: frozenset
    is_stable: bool
    is_answer_set: bool
    is_circular: Optional[bool]
    circularity_witness: Optional[frozenset] = None

    def __post_init__(self):
        if self.is_answer_set and not self.is_stable:
            raise ModelError("every answer set is a stable model")
        if self.is_answer_set and self.is_circular:
            raise ModelError("an answer set cannot be circular")


def analyze_model(program: WeightProgram, interp: frozenset) -> SemanticsReport:
    """Full report for one candidate interpretation."""
    stable = is_stable_model(program, interp)
    answer = is_answer_set(program, interp)
    witness = circularity_witness(program, interp) if stable else None
    return SemanticsReport(
        model=interp,
        is_stable=stable,
        is_answer_set=answer,
        is_circular=(witness is not None) if stable else None,
        circularity_witness=witness,
    )
