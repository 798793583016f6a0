"""Programs with nested expressions: satisfaction, reduct, stable models.

Formulas are built from atoms, top, and bot with not, conjunction, and
disjunction. The reduct replaces each not-subformula by bot or top
according to the candidate model, so reducts are negation-free; a stable
model is a minimal model of the reduct (minimality checked exhaustively,
which is all the desk scale needs).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .model import Atom, iter_interpretations, sort_models
from .semantics import DEFAULT_ATOM_CAP, EnumerationCapError


class NestedExpr:
    """Base class for formula nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Top(NestedExpr):
    def __str__(self) -> str:
        return "top"


@dataclass(frozen=True)
class Bottom(NestedExpr):
    def __str__(self) -> str:
        return "bot"


@dataclass(frozen=True)
class AtomRef(NestedExpr):
    atom: Atom

    def __str__(self) -> str:
        return str(self.atom)


@dataclass(frozen=True)
class Not(NestedExpr):
    operand: NestedExpr

    def __str__(self) -> str:
        return f"not {self.operand}"


@dataclass(frozen=True)
class And(NestedExpr):
    parts: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    def __str__(self) -> str:
        if not self.parts:
            return "top"
        return "(" + ", ".join(str(p) for p in self.parts) + ")"


@dataclass(frozen=True)
class Or(NestedExpr):
    parts: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    def __str__(self) -> str:
        if not self.parts:
            return "bot"
        return "(" + "; ".join(str(p) for p in self.parts) + ")"


TOP = Top()
BOTTOM = Bottom()


def ref(atom: Atom) -> AtomRef:
    return AtomRef(atom)


def conj(parts: Iterable[NestedExpr]) -> NestedExpr:
    """n-ary conjunction; empty is top, a single part stands alone."""
    parts = tuple(parts)
    if not parts:
        return TOP
    if len(parts) == 1:
        return parts[0]
    return And(parts)


def disj(parts: Iterable[NestedExpr]) -> NestedExpr:
    """n-ary disjunction; empty is bot, a single part stands alone."""
    parts = tuple(parts)
    if not parts:
        return BOTTOM
    if len(parts) == 1:
        return parts[0]
    return Or(parts)


def satisfies_formula(interp: frozenset, formula: NestedExpr) -> bool:
    match formula:
        case Top():
            return True
        case Bottom():
            return False
        case AtomRef(atom):
            return atom in interp
        case Not(operand):
            return not satisfies_formula(interp, operand)
        case And(parts):
            return all(satisfies_formula(interp, p) for p in parts)
        case Or(parts):
            return any(satisfies_formula(interp, p) for p in parts)
    raise TypeError(f"not a formula: {formula!r}")


def formula_reduct(formula: NestedExpr, interp: frozenset) -> NestedExpr:
    """Replace each not-subformula by bot/top according to `interp`."""
    match formula:
        case Top() | Bottom() | AtomRef(_):
            return formula
        case Not(operand):
            return BOTTOM if satisfies_formula(interp, operand) else TOP
        case And(parts):
            return And(tuple(formula_reduct(p, interp) for p in parts))
        case Or(parts):
            return Or(tuple(formula_reduct(p, interp) for p in parts))
    raise TypeError(f"not a formula: {formula!r}")


def formula_atoms(formula: NestedExpr) -> frozenset:
    match formula:
        case Top() | Bottom():
            return frozenset()
        case AtomRef(atom):
            return frozenset({atom})
        case Not(operand):
            return formula_atoms(operand)
        case And(parts) | Or(parts):
            out = set()
            for p in parts:
                out |= formula_atoms(p)
            return frozenset(out)
    raise TypeError(f"not a formula: {formula!r}")


@dataclass(frozen=True)
class NestedRule:
    head: NestedExpr
    body: NestedExpr = TOP

    def satisfied_by(self, interp: frozenset) -> bool:
        return not satisfies_formula(interp, self.body) or satisfies_formula(
            interp, self.head
        )

    def __str__(self) -> str:
        if self.body == TOP:
            return f"{self.head}."
        return f"{self.head} :- {self.body}."


@dataclass(frozen=True)
class NestedProgram:
    rules: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))

    def atoms(self) -> frozenset:
        out = set()
        for rule in self.rules:
            out |= formula_atoms(rule.head) | formula_atoms(rule.body)
        return frozenset(out)

    def satisfied_by(self, interp: frozenset) -> bool:
        return all(rule.satisfied_by(interp) for rule in self.rules)

    def __str__(self) -> str:
        return "".join(f"{rule}\n" for rule in self.rules)


def program_reduct(program: NestedProgram, interp: frozenset) -> NestedProgram:
    return NestedProgram(
        tuple(
            NestedRule(formula_reduct(r.head, interp), formula_reduct(r.body, interp))
            for r in program.rules
        )
    )


def is_stable_model_ne(program: NestedProgram, interp: frozenset) -> bool:
    """interp is a minimal model of the program's reduct."""
    if not interp <= program.atoms():
        return False
    reduct = program_reduct(program, interp)
    if not reduct.satisfied_by(interp):
        return False
    members = sorted(interp)
    for smaller in iter_interpretations(members):
        if smaller != interp and reduct.satisfied_by(smaller):
            return False
    return True


def stable_models_ne(program: NestedProgram, cap: int = DEFAULT_ATOM_CAP) -> list:
    """All stable models of the nested program, in deterministic order."""
    atoms = sorted(program.atoms())
    if len(atoms) > cap:
        raise EnumerationCapError(len(atoms), cap)
    return sort_models(
        m for m in iter_interpretations(atoms) if is_stable_model_ne(program, m)
    )
