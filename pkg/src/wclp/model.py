"""Core model for ground weight constraint programs.

Atoms, literals, weighted multisets with bounds, rules, and programs, plus
classical satisfaction and the negative-weight elimination rewrite. Weights
and finite bounds are exact rationals; the two infinities (used only as
bounds) are the float infinities, which order correctly against Fraction.

Everything here is immutable and hashable, so values can be shared freely
between concurrent workers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

NEG_INF: float = float("-inf")
POS_INF: float = float("inf")

#: A bound is an exact rational or one of the two infinities.
Bound = Union[Fraction, float]

#: An interpretation is a finite set of atoms.
Interpretation = frozenset

#: Atoms generated by the aggregate translation carry this prefix; the
#: parsers reject it in user input so generated names can never collide.
RESERVED_ATOM_PREFIX = "__aux_"

_ATOM_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_()]*\Z")


class ModelError(ValueError):
    """A malformed model value (bad atom name, non-finite weight, ...)."""


class RefusalError(Exception):
    """The operation is legal but refused at this scale or feature level.

    Carries a human-readable reason naming the cap or the offending rule.
    Mapped to exit code 2 by the command line interface.
    """


def as_weight(value) -> Fraction:
    """Coerce an int, Fraction, or string to an exact finite weight."""
    if isinstance(value, bool):
        raise ModelError(f"weight must be a rational number, got {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise ModelError(f"weight must be exact (int, Fraction, or string), got {value!r}")


def as_bound(value, *, which: str) -> Bound:
    """Coerce a bound; the only floats admitted are the two infinities."""
    if isinstance(value, float):
        if value == NEG_INF and which == "lower":
            return NEG_INF
        if value == POS_INF and which == "upper":
            return POS_INF
        raise ModelError(f"{which} bound must be exact or the matching infinity, got {value!r}")
    return as_weight(value)


@dataclass(frozen=True, order=True)
class Atom:
    """A propositional atom, totally ordered by name for deterministic output."""

    name: str

    def __post_init__(self):
        if not _ATOM_NAME.match(self.name):
            raise ModelError(
                f"bad atom name {self.name!r}: letters, digits, underscore and "
                "parentheses only, starting with a letter or underscore"
            )
        depth = 0
        for ch in self.name:
            depth += ch == "("
            depth -= ch == ")"
            if depth < 0:
                break
        if depth != 0:
            raise ModelError(f"bad atom name {self.name!r}: unbalanced parentheses")

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, order=True)
class Literal:
    """An atom or a not-atom."""

    atom: Atom
    negated: bool = False

    def __str__(self) -> str:
        return f"not {self.atom}" if self.negated else str(self.atom)


@dataclass(frozen=True)
class WeightedLiteral:
    """A literal together with its weight."""

    literal: Literal
    weight: Fraction

    def __post_init__(self):
        object.__setattr__(self, "weight", as_weight(self.weight))

    def __str__(self) -> str:
        return f"{self.literal}={self.weight}"


@dataclass(frozen=True)
class Bounds:
    """Lower/upper bounds; a missing bound is the corresponding infinity.

    lower > upper is legal: such a constraint is simply unsatisfiable.
    """

    lower: Bound = NEG_INF
    upper: Bound = POS_INF

    def __post_init__(self):
        object.__setattr__(self, "lower", as_bound(self.lower, which="lower"))
        object.__setattr__(self, "upper", as_bound(self.upper, which="upper"))


NO_BOUNDS = Bounds()


@dataclass(frozen=True)
class WeightConstraint:
    """Bounds over an ordered multiset of weighted literals.

    Duplicate elements are meaningful and contribute with multiplicity,
    which is what lets a single constraint encode a multiset aggregate.
    """

    bounds: Bounds = NO_BOUNDS
    elements: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        for el in self.elements:
            if not isinstance(el, WeightedLiteral):
                raise ModelError(f"constraint element must be a WeightedLiteral, got {el!r}")

    @property
    def lower(self) -> Bound:
        return self.bounds.lower

    @property
    def upper(self) -> Bound:
        return self.bounds.upper

    def literals(self) -> frozenset:
        """The literal set lit(W)."""
        return frozenset(el.literal for el in self.elements)

    def domain(self) -> frozenset:
        """Atoms occurring in the constraint, positively or under not."""
        return frozenset(el.literal.atom for el in self.elements)

    def positive_atoms(self) -> frozenset:
        return frozenset(el.literal.atom for el in self.elements if not el.literal.negated)

    def negative_atoms(self) -> frozenset:
        return frozenset(el.literal.atom for el in self.elements if el.literal.negated)

    def pos_members(self, interp: frozenset) -> frozenset:
        """The atoms of `interp` occurring positively in the constraint."""
        return self.positive_atoms() & interp

    def neg_members(self, interp: frozenset) -> frozenset:
        """The atoms of `interp` occurring under not in the constraint."""
        return self.negative_atoms() & interp

    def value(self, interp: frozenset) -> Fraction:
        """Sum the weights of positive members of `interp` and of negative
        elements whose atom is absent, with multiplicity."""
        total = Fraction(0)
        for el in self.elements:
            if el.literal.negated:
                if el.literal.atom not in interp:
                    total += el.weight
            elif el.literal.atom in interp:
                total += el.weight
        return total

    def satisfied_by(self, interp: frozenset) -> bool:
        return self.bounds.lower <= self.value(interp) <= self.bounds.upper

    def has_negative_weights(self) -> bool:
        return any(el.weight < 0 for el in self.elements)

    def total_weight(self) -> Fraction:
        return sum((el.weight for el in self.elements), Fraction(0))

    def is_unit_for(self) -> "Literal | None":
        """The literal l if this constraint is exactly 1[l=1]1, else None."""
        if (
            len(self.elements) == 1
            and self.elements[0].weight == 1
            and self.bounds.lower == 1
            and self.bounds.upper == 1
        ):
            return self.elements[0].literal
        return None

    def __str__(self) -> str:
        unit = self.is_unit_for()
        if unit is not None:
            return str(unit)
        inner = "[" + ", ".join(str(el) for el in self.elements) + "]"
        parts = []
        if self.bounds.lower != NEG_INF:
            parts.append(str(self.bounds.lower))
        parts.append(inner)
        if self.bounds.upper != POS_INF:
            parts.append(str(self.bounds.upper))
        return " ".join(parts)


def wc(lower, elements: Iterable[WeightedLiteral] = (), upper=POS_INF) -> WeightConstraint:
    """Convenience constructor: wc(l, elements, u)."""
    if lower is None:
        lower = NEG_INF
    if upper is None:
        upper = POS_INF
    return WeightConstraint(Bounds(lower, upper), tuple(elements))


def wlit(name: str, weight, negated: bool = False) -> WeightedLiteral:
    """Convenience constructor for a weighted literal."""
    return WeightedLiteral(Literal(Atom(name), negated), as_weight(weight))


def unit_constraint(literal: Literal) -> WeightConstraint:
    """The constraint 1[l=1]1, the expansion of a bare literal."""
    return WeightConstraint(Bounds(1, 1), (WeightedLiteral(literal, Fraction(1)),))


def eliminate_negative_weights(constraint: WeightConstraint) -> WeightConstraint:
    """Flip every negative-weight element to the complementary literal with
    weight |w| and raise both bounds by the total flipped |w|.

    Satisfaction-preserving for every interpretation, and idempotent.
    """
    if not constraint.has_negative_weights():
        return constraint
    shift = Fraction(0)
    elements = []
    for el in constraint.elements:
        if el.weight < 0:
            flipped = Literal(el.literal.atom, not el.literal.negated)
            elements.append(WeightedLiteral(flipped, -el.weight))
            shift -= el.weight
        else:
            elements.append(el)
    lower = constraint.bounds.lower
    upper = constraint.bounds.upper
    # float infinities absorb the shift; finite bounds stay exact
    return WeightConstraint(Bounds(lower + shift, upper + shift), tuple(elements))


@dataclass(frozen=True)
class WeightRule:
    """W0 <- W1, ..., Wn."""

    head: WeightConstraint
    body: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "body", tuple(self.body))

    def atoms(self) -> frozenset:
        out = set(self.head.domain())
        for constraint in self.body:
            out |= constraint.domain()
        return frozenset(out)

    def body_satisfied_by(self, interp: frozenset) -> bool:
        return all(constraint.satisfied_by(interp) for constraint in self.body)

    def satisfied_by(self, interp: frozenset) -> bool:
        """Classical implication: body satisfied only if head satisfied."""
        return not self.body_satisfied_by(interp) or self.head.satisfied_by(interp)

    def __str__(self) -> str:
        if not self.body:
            return f"{self.head}."
        return f"{self.head} :- " + ", ".join(str(c) for c in self.body) + "."


@dataclass(frozen=True)
class WeightProgram:
    """A finite set of weight rules (kept in source order)."""

    rules: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))

    def atoms(self) -> frozenset:
        out = set()
        for rule in self.rules:
            out |= rule.atoms()
        return frozenset(out)

    def is_basic(self) -> bool:
        """Every head is 1[a=1]1 for an atom a."""
        for rule in self.rules:
            unit = rule.head.is_unit_for()
            if unit is None or unit.negated:
                return False
        return True

    def satisfied_by(self, interp: frozenset) -> bool:
        return all(rule.satisfied_by(interp) for rule in self.rules)

    def __str__(self) -> str:
        return "".join(f"{rule}\n" for rule in self.rules)


def normalize_rule(rule: WeightRule) -> WeightRule:
    """Eliminate negative weights from the head and every body constraint."""
    return WeightRule(
        eliminate_negative_weights(rule.head),
        tuple(eliminate_negative_weights(c) for c in rule.body),
    )


def normalize_program(program: WeightProgram) -> WeightProgram:
    return WeightProgram(tuple(normalize_rule(r) for r in program.rules))


def head_atom(rule: WeightRule) -> Atom:
    """The head atom of a basic rule."""
    unit = rule.head.is_unit_for()
    if unit is None or unit.negated:
        raise ModelError(f"rule is not basic: {rule}")
    return unit.atom


def to_basic(program: WeightProgram, interp: frozenset) -> WeightProgram:
    """One rule p <- body per positive head literal p drawn from `interp`.

    Stable models / answer sets equal to `interp` carry over between the
    program and its basic counterpart.
    """
    rules = []
    for rule in program.rules:
        head = eliminate_negative_weights(rule.head)
        for atom in sorted(head.positive_atoms() & interp):
            rules.append(WeightRule(unit_constraint(Literal(atom)), rule.body))
    return WeightProgram(tuple(rules))


def iter_interpretations(atoms: Sequence[Atom]) -> Iterator[frozenset]:
    """All subsets of `atoms`, in binary counting order over the given order."""
    n = len(atoms)
    for mask in range(1 << n):
        yield frozenset(atoms[i] for i in range(n) if mask >> i & 1)


def sort_models(models: Iterable[frozenset]) -> list:
    """Deterministic model order: lexicographic on the sorted atom names."""
    return sorted(models, key=lambda m: tuple(sorted(a.name for a in m)))
