import pytest
from fractions import Fraction
from hypothesis import given, strategies as st

from wclp.model import (
    Atom,
    Bounds,
    Literal,
    NEG_INF,
    POS_INF,
    WeightConstraint,
    WeightProgram,
    WeightRule,
    WeightedLiteral,
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
from wclp.nested import And, Not, Or, TOP, BOTTOM, NestedProgram, NestedRule, ref
from wclp.syntax import (
    Diagnostic,
    ParseError,
    detect_format,
    parse_aggregate_program,
    parse_nested_program,
    parse_program,
    parse_weight_program,
    render_aggregate_program,
    render_nested_program,
    render_weight_program,
)


# --- golden texts -------------------------------------------------------------


def test_parse_section4_example():
    p = parse_weight_program("a :- 0 [not a=3] 2.")
    assert p == WeightProgram([
        WeightRule(unit_constraint(Literal(Atom("a"))), (wc(0, [wlit("a", 3, True)], 2),))
    ])


def test_parse_bare_fact():
    p = parse_weight_program("a.")
    assert p.rules[0].head == unit_constraint(Literal(Atom("a")))
    assert p.rules[0].body == ()


def test_parse_rationals_and_negatives():
    p = parse_weight_program("-1 [x=-1, y=1/2] 2/3.")
    head = p.rules[0].head
    assert head.lower == -1 and head.upper == Fraction(2, 3)
    assert head.elements[0].weight == -1
    assert head.elements[1].weight == Fraction(1, 2)


def test_parse_empty_brackets_and_comments():
    p = parse_weight_program("% comment line\na :- []. % trailing\n")
    assert p.rules[0].body == (WeightConstraint(),)


def test_parse_agg_section22():
    p = parse_aggregate_program("h :- sum{p1:-1, p2:1, p3:1, p4:2} >= 2.")
    body = p.rules[0].body[0]
    assert body.func is AggregateFunction.SUM
    assert [el.value for el in body.elements] == [-1, 1, 1, 2]
    assert body.op is Relation.GE and body.result == 2


def test_parse_agg_minimal_and_literals():
    p = parse_aggregate_program("h :- count{a:1} >= 1, not q, p.")
    assert p.rules[0].body[0].func is AggregateFunction.COUNT
    assert p.rules[0].body[1] == Literal(Atom("q"), True)
    assert p.rules[0].body[2] == Literal(Atom("p"))


def test_parse_agg_ne_parses():
    p = parse_aggregate_program("h :- sum{p1:1} != 0.")
    assert p.rules[0].body[0].op is Relation.NE


def test_parse_ne_example8_rule():
    p = parse_nested_program("b :- (not a, not b); (b, not a); (a, b).")
    a, b = ref(Atom("a")), ref(Atom("b"))
    assert p.rules[0].body == Or((
        And((Not(a), Not(b))),
        And((b, Not(a))),
        And((a, b)),
    ))


def test_parse_ne_double_negation_and_constants():
    p = parse_nested_program("a :- not not a.\ntop :- bot.")
    assert p.rules[0].body == Not(Not(ref(Atom("a"))))
    assert p.rules[1].head == TOP and p.rules[1].body == BOTTOM


# --- diagnostics ---------------------------------------------------------------


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("a :- [b=].", "integer"),
        ("a :- b", "'.'"),
        ("1a.", "'['"),
        (":- a.", "atom"),
        ("a :- not.", "atom"),
        ("h :- sum{} >= 1.", "atom"),
        ("h :- sum{a:1} ? 1.", "unexpected character"),
        ("a :- (b; c.", "')'"),
    ],
)
def test_parse_errors_carry_location(text, fragment):
    fmt = "agg" if "sum" in text else ("ne" if "(" in text else "wc")
    with pytest.raises(ParseError) as err:
        parse_program(text, fmt)
    diag = err.value.diagnostic
    assert isinstance(diag, Diagnostic)
    assert diag.severity == "error" and diag.line >= 1 and diag.column >= 1
    assert fragment in diag.message


def test_keywords_are_not_atoms():
    for text, fmt in (("top.", "wc"), ("bot.", "agg"), ("not.", "ne")):
        with pytest.raises(ParseError):
            parse_program(text, fmt)


def test_reserved_prefix_rejected_unless_allowed():
    with pytest.raises(ParseError, match="reserved"):
        parse_weight_program("__aux_1_pos_p.")
    p = parse_weight_program("__aux_1_pos_p.", allow_reserved=True)
    assert p.rules[0].head.is_unit_for() == Literal(Atom("__aux_1_pos_p"))


def test_zero_denominator_rejected():
    with pytest.raises(ParseError, match="denominator"):
        parse_weight_program("1/0 [a=1].")


# --- round trips -----------------------------------------------------------------

atom_names = st.sampled_from(["a", "b", "c", "p(2)", "q_1"])
rationals = st.one_of(
    st.integers(-5, 5).map(Fraction),
    st.fractions(min_value=-4, max_value=4, max_denominator=6),
)
weighted = st.builds(
    lambda n, w, neg: WeightedLiteral(Literal(Atom(n), neg), w),
    atom_names, rationals, st.booleans(),
)
bounds = st.builds(
    Bounds,
    st.one_of(st.just(NEG_INF), rationals),
    st.one_of(st.just(POS_INF), rationals),
)
constraints = st.one_of(
    st.builds(WeightConstraint, bounds, st.lists(weighted, max_size=3).map(tuple)),
    st.builds(lambda n, neg: unit_constraint(Literal(Atom(n), neg)), atom_names, st.booleans()),
)
weight_rules = st.builds(WeightRule, constraints, st.lists(constraints, max_size=3).map(tuple))
weight_programs = st.builds(WeightProgram, st.lists(weight_rules, max_size=4).map(tuple))


@given(weight_programs)
def test_weight_program_round_trip(program):
    assert parse_weight_program(render_weight_program(program)) == program


agg_elements = st.builds(
    lambda n, v: AggregateElement(Atom(n), v), atom_names, st.integers(-4, 4)
)
aggregates = st.builds(
    AggregateAtom,
    st.sampled_from(list(AggregateFunction)),
    st.lists(agg_elements, min_size=1, max_size=3).map(tuple),
    st.sampled_from(list(Relation)),
    st.integers(-4, 4),
)
agg_items = st.one_of(
    aggregates, st.builds(lambda n, neg: Literal(Atom(n), neg), atom_names, st.booleans())
)
agg_rules = st.builds(
    lambda h, b: AggregateRule(Atom(h), tuple(b)), atom_names, st.lists(agg_items, max_size=3)
)
agg_programs = st.builds(AggregateProgram, st.lists(agg_rules, max_size=4).map(tuple))


@given(agg_programs)
def test_aggregate_program_round_trip(program):
    assert parse_aggregate_program(render_aggregate_program(program)) == program


formulas = st.recursive(
    st.one_of(st.just(TOP), st.just(BOTTOM), atom_names.map(lambda n: ref(Atom(n)))),
    lambda sub: st.one_of(
        sub.map(Not),
        st.lists(sub, min_size=2, max_size=3).map(lambda ps: And(tuple(ps))),
        st.lists(sub, min_size=2, max_size=3).map(lambda ps: Or(tuple(ps))),
    ),
    max_leaves=8,
)
ne_rules = st.builds(NestedRule, formulas, formulas)
ne_programs = st.builds(NestedProgram, st.lists(ne_rules, max_size=4).map(tuple))


@given(ne_programs)
def test_nested_program_round_trip(program):
    assert parse_nested_program(render_nested_program(program)) == program


def test_translate_outputs_reparse():
    from wclp.transforms import tau_program, tr_program, ne_program, fl_program
    from helpers import gen_aggregate_program, gen_program
    import random

    rng = random.Random(51)
    for _ in range(20):
        p = gen_program(rng, positive_heads=True)
        assert parse_weight_program(render_weight_program(tr_program(p))) == tr_program(p)
        for nested in (ne_program(p), fl_program(p)):
            assert parse_nested_program(render_nested_program(nested)) == nested
    for _ in range(20):
        ap = gen_aggregate_program(rng)
        out = tau_program(ap)
        assert parse_weight_program(render_weight_program(out), allow_reserved=True) == out


def test_detect_format():
    assert detect_format("x/y/prog.wc") == "wc"
    assert detect_format("prog.agg") == "agg"
    assert detect_format("prog.NE") == "ne"
    assert detect_format("prog.txt") is None
    assert detect_format("prog") is None
