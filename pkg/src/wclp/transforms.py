"""The four program translations.

* strongly satisfiable encoding and Tr: split each body constraint into a
  lower-bound part and a complementary upper-bound part, both upper-bound
  free, so that stable models of the result are the answer sets of the
  source;
* aggregate encodings and tau: rewrite SUM/COUNT/AVG/MAX/MIN aggregates
  into weight constraints (MAX/MIN introduce fresh sign-split atoms backed
  by auxiliary rules);
* the direct nested-expression translation NE, which preserves answer
  sets;
* the contrasting FL-style translation, which reads the upper bound as
  "not above u" and preserves stable models instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .model import (
    NEG_INF,
    POS_INF,
    RESERVED_ATOM_PREFIX,
    Atom,
    Bounds,
    Literal,
    RefusalError,
    WeightConstraint,
    WeightProgram,
    WeightRule,
    WeightedLiteral,
    eliminate_negative_weights,
    normalize_rule,
    unit_constraint,
)
from .aggregates import (
    AggregateAtom,
    AggregateFunction,
    AggregateProgram,
    Relation,
)
from .nested import (
    TOP,
    NestedExpr,
    NestedProgram,
    NestedRule,
    Not,
    Or,
    conj,
    disj,
    ref,
)

#: Largest constraint domain expanded into a nested-expression disjunction.
DEFAULT_FORMULA_DOMAIN_CAP = 12


class UnsupportedAggregateError(RefusalError):
    """An aggregate outside the translatable fragment."""


class FormulaDomainCapError(RefusalError):
    """A constraint too wide for the exponential nested-expression expansion."""

    def __init__(self, size: int, cap: int, constraint: WeightConstraint):
        super().__init__(
            f"constraint '{constraint}' spans {size} atoms, above the "
            f"nested-expression domain cap of {cap}"
        )
        self.size = size
        self.cap = cap


# ---------------------------------------------------------------------------
# strongly satisfiable encoding


@dataclass(frozen=True)
class SSEncoding:
    """The (lower, upper) pair standing in for one constraint."""

    lower_part: WeightConstraint
    upper_part: WeightConstraint


VACUOUS = WeightConstraint()


def ss_encode(constraint: WeightConstraint) -> SSEncoding:
    """Split a constraint into its lower-bound part and the complementary
    encoding of its upper bound; both are upper-bound free, hence strongly
    satisfiable, and their conjunction is satisfaction-equivalent to the
    original."""
    constraint = eliminate_negative_weights(constraint)
    lower_part = WeightConstraint(
        Bounds(constraint.bounds.lower, POS_INF), constraint.elements
    )
    if constraint.bounds.upper == POS_INF:
        upper_part = VACUOUS
    else:
        flipped = tuple(
            WeightedLiteral(Literal(el.literal.atom, not el.literal.negated), el.weight)
            for el in constraint.elements
        )
        bound = -constraint.bounds.upper + constraint.total_weight()
        upper_part = WeightConstraint(Bounds(bound, POS_INF), flipped)
    return SSEncoding(lower_part, upper_part)


def tr_program(program: WeightProgram) -> WeightProgram:
    """Replace every body constraint by its two-part encoding; heads are
    untouched. Answer sets of the source are the stable models of the
    result."""
    rules = []
    for rule in program.rules:
        body = []
        for constraint in rule.body:
            enc = ss_encode(constraint)
            body.append(enc.lower_part)
            body.append(enc.upper_part)
        rules.append(WeightRule(rule.head, tuple(body)))
    return WeightProgram(tuple(rules))


# ---------------------------------------------------------------------------
# aggregate encodings


@dataclass(frozen=True)
class AggregateEncoding:
    """Weight constraints standing in for one aggregate occurrence.

    Relation constraints go into the translated rule body; auxiliary
    constraints (MAX/MIN only) become heads of auxiliary rules triggered by
    their source atom. Fresh atoms are disjoint from every user atom by the
    reserved name prefix.
    """

    relation_constraints: tuple
    auxiliary_constraints: tuple  # of (trigger atom, constraint) pairs
    fresh_atoms: frozenset


class FreshNames:
    """Deterministic fresh-atom names for one aggregate occurrence."""

    def __init__(self, occurrence: int):
        self.occurrence = occurrence
        self.allocated: set = set()

    def _make(self, tag: str, atom: Atom) -> Atom:
        fresh = Atom(f"{RESERVED_ATOM_PREFIX}{self.occurrence}_{tag}_{atom.name}")
        self.allocated.add(fresh)
        return fresh

    def plus(self, atom: Atom) -> Atom:
        return self._make("pos", atom)

    def minus(self, atom: Atom) -> Atom:
        return self._make("neg", atom)


def _pos(atom: Atom, weight) -> WeightedLiteral:
    return WeightedLiteral(Literal(atom), Fraction(weight))


def _members(agg: AggregateAtom, weight_of) -> tuple:
    return tuple(_pos(el.atom, weight_of(el)) for el in agg.elements)


def _nonempty(agg: AggregateAtom) -> WeightConstraint:
    return WeightConstraint(Bounds(1, POS_INF), _members(agg, lambda el: 1))


def _norm(constraints):
    return tuple(eliminate_negative_weights(c) for c in constraints)


def _encode_ge(agg: AggregateAtom, threshold: int, strict: bool, fresh: FreshNames):
    """Relation and auxiliary constraints for `aggr{...} >= threshold`
    (or > with `strict`)."""
    func = agg.func
    if func is AggregateFunction.AVG:
        # the average itself may be fractional even over integers, so the
        # strict margin must land on the integer sum of (value - threshold)
        main = WeightConstraint(
            Bounds(1 if strict else 0, POS_INF),
            _members(agg, lambda el: el.value - threshold),
        )
        return (main, _nonempty(agg)), ()
    k = threshold + 1 if strict else threshold
    if func is AggregateFunction.SUM:
        return (WeightConstraint(Bounds(k, POS_INF), _members(agg, lambda el: el.value)),), ()
    if func is AggregateFunction.COUNT:
        return (WeightConstraint(Bounds(k, POS_INF), _members(agg, lambda el: 1)),), ()
    # MAX and MIN split every element into sign-tracking fresh atoms; the
    # per-element constraints tie p+/p- to p, the big relation constraint
    # compares the signed sum against the absolute sum.
    if func is AggregateFunction.MAX:
        shift, relation_bounds = 1, Bounds(1, POS_INF)
        plus_sign, minus_sign = 1, -1
    else:
        shift, relation_bounds = 0, Bounds(0, 0)
        plus_sign, minus_sign = -1, 1
    aux = []
    relation_members = []
    for el in agg.elements:
        d = el.value - k + shift
        plus = fresh.plus(el.atom)
        minus = fresh.minus(el.atom)
        aux.append((el.atom, WeightConstraint(Bounds(0, 0), (
            _pos(el.atom, -1), _pos(plus, 1), _pos(minus, 1)))))
        aux.append((el.atom, WeightConstraint(Bounds(0, POS_INF), (
            _pos(el.atom, -d), _pos(plus, d)))))
        aux.append((el.atom, WeightConstraint(Bounds(0, POS_INF), (
            _pos(el.atom, d), _pos(minus, -d)))))
        relation_members += [
            _pos(el.atom, d),
            _pos(plus, plus_sign * d),
            _pos(minus, minus_sign * d),
        ]
    relations = (
        WeightConstraint(relation_bounds, tuple(relation_members)),
        _nonempty(agg),
    )
    return relations, tuple(aux)


def _encode_le(agg: AggregateAtom, threshold: int, strict: bool):
    """Relation and auxiliary constraints for `aggr{...} <= threshold`
    (or < with `strict`)."""
    func = agg.func
    if func is AggregateFunction.AVG:
        main = WeightConstraint(
            Bounds(NEG_INF, -1 if strict else 0),
            _members(agg, lambda el: el.value - threshold),
        )
        return (main, _nonempty(agg)), ()
    k = threshold - 1 if strict else threshold
    if func is AggregateFunction.SUM:
        return (WeightConstraint(Bounds(NEG_INF, k), _members(agg, lambda el: el.value)),), ()
    if func is AggregateFunction.COUNT:
        return (WeightConstraint(Bounds(NEG_INF, k), _members(agg, lambda el: 1)),), ()
    if func is AggregateFunction.MAX:
        # nothing above k may be selected, and something must be
        over = tuple(_pos(el.atom, 1) for el in agg.elements if el.value > k)
        return (WeightConstraint(Bounds(NEG_INF, 0), over), _nonempty(agg)), ()
    # MIN <= k: something at or below k must be selected
    under = tuple(_pos(el.atom, 1) for el in agg.elements if el.value <= k)
    return (WeightConstraint(Bounds(1, POS_INF), under),), ()


def encode_aggregate(agg: AggregateAtom, fresh: FreshNames) -> AggregateEncoding:
    """Encode one aggregate as weight constraints.

    Handles =, <=, <, >=, >; strict comparisons tighten an integer quantity
    by one (the threshold, or for AVG the shifted element sum). != is
    rejected here: COUNT != k is covered at the rule level by splitting
    into > and <, and for the other functions no compact conjunction
    exists (the program class is harder than NP).
    """
    if agg.op is Relation.NE:
        if agg.func is AggregateFunction.COUNT:
            raise UnsupportedAggregateError(
                f"aggregate '{agg}' must be split into > and < at the rule "
                "level; the program translation does this automatically"
            )
        raise UnsupportedAggregateError(
            f"aggregate '{agg}' is not supported: != on {agg.func} cannot be "
            "treated as the disjunction of > and < under conditional "
            "satisfaction, and such programs sit above NP"
        )
    if agg.func is not AggregateFunction.COUNT:
        value_of = {}
        for el in agg.elements:
            if value_of.setdefault(el.atom, el.value) != el.value:
                raise UnsupportedAggregateError(
                    f"aggregate '{agg}' gives atom '{el.atom}' two different "
                    "values; its weight constraint encoding would carry the "
                    "atom at both polarities, outside the translation's scope "
                    "(duplicate equal-value pairs express multisets instead)"
                )
    pieces = []
    if agg.op in (Relation.GE, Relation.GT, Relation.EQ):
        pieces.append(_encode_ge(agg, agg.result, agg.op is Relation.GT, fresh))
    if agg.op in (Relation.LE, Relation.LT, Relation.EQ):
        pieces.append(_encode_le(agg, agg.result, agg.op is Relation.LT))
    relations = []
    aux = []
    for rel_part, aux_part in pieces:
        relations += rel_part
        aux += aux_part
    seen = set()
    unique_aux = []
    for pair in ((trigger, eliminate_negative_weights(c)) for trigger, c in aux):
        if pair not in seen:  # duplicate elements re-create identical pairs
            seen.add(pair)
            unique_aux.append(pair)
    return AggregateEncoding(
        relation_constraints=_norm(relations),
        auxiliary_constraints=tuple(unique_aux),
        fresh_atoms=frozenset(fresh.allocated),
    )


def _split_ne_count(agg: AggregateAtom):
    gt = AggregateAtom(agg.func, agg.elements, Relation.GT, agg.result)
    lt = AggregateAtom(agg.func, agg.elements, Relation.LT, agg.result)
    return gt, lt


def tau_program(program: AggregateProgram) -> WeightProgram:
    """Translate an aggregate program to a weight constraint program.

    Each rule becomes one weight rule over the relation constraints of its
    aggregates (COUNT != k first splits the rule on > and <); every
    auxiliary constraint is enforced by one auxiliary rule per trigger
    atom. Fresh atoms are numbered per aggregate occurrence, so the result
    is deterministic and collision-free.
    """
    occurrence = 0
    main_rules = []
    aux_rules = []
    for rule in program.rules:
        alternatives = []  # per body item: the constraint lists to choose from
        for item in rule.body:
            if isinstance(item, Literal):
                alternatives.append((
                    (unit_constraint(item),),
                ))
                continue
            occurrence += 1
            if item.op is Relation.NE:
                if item.func is not AggregateFunction.COUNT:
                    raise UnsupportedAggregateError(
                        f"rule '{rule}' uses '{item}': != is only translatable "
                        "for COUNT (as the disjunction of > and <); for other "
                        "functions conditional satisfaction is not preserved "
                        "and the program class sits above NP"
                    )
                variants = []
                for part in _split_ne_count(item):
                    enc = encode_aggregate(part, FreshNames(occurrence))
                    variants.append(enc.relation_constraints)
                alternatives.append(tuple(variants))
                continue
            fresh = FreshNames(occurrence)
            enc = encode_aggregate(item, fresh)
            alternatives.append((enc.relation_constraints,))
            for trigger, constraint in enc.auxiliary_constraints:
                aux_rules.append(
                    WeightRule(constraint, (unit_constraint(Literal(trigger)),))
                )
        head = unit_constraint(Literal(rule.head))
        for combo in product(*alternatives):
            body = tuple(c for group in combo for c in group)
            main_rules.append(WeightRule(head, body))
    return WeightProgram(tuple(main_rules) + tuple(aux_rules))


# ---------------------------------------------------------------------------
# nested-expression translations


def ne_encode_wc(
    constraint: WeightConstraint, max_domain: int = DEFAULT_FORMULA_DOMAIN_CAP
) -> NestedExpr:
    """The nested expression standing in for one weight constraint.

    One disjunct per minimal partial assignment (asserted atoms P, denied
    atoms N) under which the constraint cannot be escaped: every completion
    I with P <= I <= atoms-minus-N satisfies it. Atoms outside P and N are
    simply not mentioned, which is what keeps the reduct of the encoding
    aligned with conditional satisfaction. A tight two-sided constraint
    mentions every atom (the classic pattern `a, not b; b, not a`); a
    constraint nothing can violate encodes to top; an unsatisfiable one to
    bot."""
    constraint = eliminate_negative_weights(constraint)
    dom = sorted(constraint.domain())
    if len(dom) > max_domain:
        raise FormulaDomainCapError(len(dom), max_domain, constraint)
    zero = Fraction(0)
    pos_w = {a: zero for a in dom}
    neg_w = {a: zero for a in dom}
    for el in constraint.elements:
        if el.literal.negated:
            neg_w[el.literal.atom] += el.weight
        else:
            pos_w[el.literal.atom] += el.weight
    lower = constraint.bounds.lower
    upper = constraint.bounds.upper
    pairs = []
    for code in range(3 ** len(dom)):
        asserted, denied = [], []
        least = zero  # completion weight range for this partial assignment
        greatest = zero
        for atom in dom:
            code, state = divmod(code, 3)
            if state == 1:
                asserted.append(atom)
                least += pos_w[atom]
                greatest += pos_w[atom]
            elif state == 2:
                denied.append(atom)
                least += neg_w[atom]
                greatest += neg_w[atom]
            else:
                least += min(pos_w[atom], neg_w[atom])
                greatest += max(pos_w[atom], neg_w[atom])
        if least >= lower and greatest <= upper:
            pairs.append((frozenset(asserted), frozenset(denied)))
    pairs.sort(key=lambda pn: (len(pn[0]) + len(pn[1]),
                               sorted(a.name for a in pn[0]),
                               sorted(a.name for a in pn[1])))
    minimal = []
    for asserted, denied in pairs:
        if not any(p <= asserted and n <= denied for p, n in minimal):
            minimal.append((asserted, denied))
    minimal.sort(key=lambda pn: (sorted(a.name for a in pn[0]),
                                 sorted(a.name for a in pn[1])))
    parts = []
    for asserted, denied in minimal:
        lits = [ref(a) for a in sorted(asserted)]
        lits += [Not(ref(a)) for a in sorted(denied)]
        parts.append(conj(lits))
    return disj(parts)


def _choice_head(rule: WeightRule, head_encoding: NestedExpr) -> NestedExpr:
    """(l; not l) for each positive head literal, conjoined with the head
    constraint's encoding."""
    chooses = [
        Or((ref(atom), Not(ref(atom))))
        for atom in sorted(rule.head.positive_atoms())
    ]
    return conj(chooses + [head_encoding])


def ne_program(
    program: WeightProgram, max_domain: int = DEFAULT_FORMULA_DOMAIN_CAP
) -> NestedProgram:
    """The direct nested-expression translation; stable models of the result
    are the answer sets of the source."""
    rules = []
    for rule in program.rules:
        rule = normalize_rule(rule)
        head = _choice_head(rule, ne_encode_wc(rule.head, max_domain))
        body = conj([ne_encode_wc(c, max_domain) for c in rule.body])
        rules.append(NestedRule(head, body))
    return NestedProgram(tuple(rules))


def fl_program(
    program: WeightProgram, max_domain: int = DEFAULT_FORMULA_DOMAIN_CAP
) -> NestedProgram:
    """The FL-style translation: each body constraint l[S]u becomes the
    encoding of its lower bound l[S] conjoined with `not` applied to the
    encoding of (u+1)[S]. The double negation on the upper bound is what
    keeps the source's stable models rather than its answer sets; on
    upper-bound-free constraints this coincides with the direct
    translation. Heads translate as there."""
    rules = []
    for rule in program.rules:
        rule = normalize_rule(rule)
        head = _choice_head(rule, ne_encode_wc(rule.head, max_domain))
        body_parts = []
        for constraint in rule.body:
            sub = []
            lower_only = WeightConstraint(
                Bounds(constraint.bounds.lower, POS_INF), constraint.elements
            )
            reach = ne_encode_wc(lower_only, max_domain)
            if reach != TOP:
                sub.append(reach)
            if constraint.bounds.upper != POS_INF:
                over = WeightConstraint(
                    Bounds(constraint.bounds.upper + 1, POS_INF), constraint.elements
                )
                sub.append(Not(ne_encode_wc(over, max_domain)))
            body_parts.append(conj(sub))
        rules.append(NestedRule(head, conj(body_parts)))
    return NestedProgram(tuple(rules))
