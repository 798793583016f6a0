"""Text formats for the three program classes.

One file format per class, selected by extension or flag:

* ``.wc``  weight constraint programs:
  ``a :- 0 [not a=3, b=1/2] 2, c.``  (a bare literal abbreviates 1[l=1]1;
  either bound may be missing; weights and bounds are ``n`` or ``n/d``)
* ``.agg`` aggregate programs:
  ``h :- sum{p1:-1, p2:1} >= 2, not q.``
* ``.ne``  nested programs:
  ``b :- (not a, not b); (b, not a); (a, b).``

``%`` starts a comment. Atom names use letters, digits, underscores, and
parentheses, start with a letter or underscore, and may not be ``not``,
``top``, ``bot``, or (in user input) carry the reserved ``__aux_`` prefix.
``not`` binds to the following whitespace-separated token.

Rendering is ``str()`` on the model classes; parsing the rendered text
gives back a structurally identical program.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .model import (
    RESERVED_ATOM_PREFIX,
    Atom,
    Bounds,
    Literal,
    WeightConstraint,
    WeightProgram,
    WeightRule,
    WeightedLiteral,
    unit_constraint,
)
from .aggregates import (
    AggregateAtom,
    AggregateElement,
    AggregateFunction,
    AggregateProgram,
    AggregateRule,
    Relation,
)
from .nested import (
    BOTTOM,
    TOP,
    And,
    NestedExpr,
    NestedProgram,
    NestedRule,
    Not,
    Or,
    ref,
)

SOURCE_FORMATS = ("wc", "agg", "ne")

_KEYWORDS = ("not", "top", "bot")
_SYMBOLS = (":-", ">=", "<=", "!=", "[", "]", "{", "}", "(", ")",
            ",", ";", ".", "=", "<", ">", "/", "-", ":")


def _scan_ident(text: str, start: int) -> int:
    """End of an identifier starting at `start` (a letter or underscore).

    Parentheses belong to the name only as balanced groups glued to it, so
    `p(f(2))x` is one name while the `)` in `(a, b)` stays a symbol.
    """
    n = len(text)

    def take_word(k: int) -> int:
        while k < n and (text[k].isalnum() or text[k] == "_"):
            k += 1
        return k

    j = take_word(start + 1)
    while j < n and text[j] == "(":
        depth = 0
        k = j
        end = None
        while k < n:
            ch = text[k]
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0:
                    end = k + 1
                    break
            elif not (ch.isalnum() or ch == "_"):
                break
            k += 1
        if end is None:
            break
        j = take_word(end)
    return j


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    line: int
    column: int
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.severity}: {self.message}"


class ParseError(Exception):
    def __init__(self, diagnostic: Diagnostic):
        super().__init__(str(diagnostic))
        self.diagnostic = diagnostic


@dataclass(frozen=True)
class _Token:
    kind: str  # "ident", "int", "sym", "eof"
    value: str
    line: int
    column: int


def _tokenize(text: str) -> list:
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "%":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch.isalpha() or ch == "_":
            end = _scan_ident(text, i)
            tokens.append(_Token("ident", text[i:end], line, col))
            col += end - i
            i = end
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(_Token("sym", sym, line, col))
                col += len(sym)
                i += len(sym)
                break
        else:
            raise ParseError(Diagnostic("error", line, col, f"unexpected character {ch!r}"))
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Stream:
    def __init__(self, text: str, allow_reserved: bool):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.allow_reserved = allow_reserved

    def peek(self, ahead: int = 0) -> _Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def next(self) -> _Token:
        tok = self.peek()
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def fail(self, message: str, tok: Optional[_Token] = None):
        tok = tok or self.peek()
        raise ParseError(Diagnostic("error", tok.line, tok.column, message))

    def expect_sym(self, sym: str) -> _Token:
        tok = self.peek()
        if tok.kind != "sym" or tok.value != sym:
            self.fail(f"expected {sym!r}, found {tok.value!r}" if tok.kind != "eof"
                      else f"expected {sym!r} before end of input")
        return self.next()

    def at_sym(self, sym: str) -> bool:
        tok = self.peek()
        return tok.kind == "sym" and tok.value == sym

    def atom(self) -> Atom:
        tok = self.peek()
        if tok.kind != "ident":
            self.fail(f"expected an atom, found {tok.value!r}" if tok.kind != "eof"
                      else "expected an atom before end of input")
        if tok.value in _KEYWORDS:
            self.fail(f"{tok.value!r} is a keyword, not an atom")
        if tok.value.startswith(RESERVED_ATOM_PREFIX) and not self.allow_reserved:
            self.fail(f"atom {tok.value!r} uses the reserved {RESERVED_ATOM_PREFIX!r} prefix")
        self.next()
        return Atom(tok.value)

    def literal(self) -> Literal:
        if self.peek().kind == "ident" and self.peek().value == "not":
            self.next()
            return Literal(self.atom(), True)
        return Literal(self.atom())

    def integer(self) -> int:
        negative = False
        if self.at_sym("-"):
            self.next()
            negative = True
        tok = self.peek()
        if tok.kind != "int":
            self.fail(f"expected an integer, found {tok.value!r}")
        self.next()
        value = int(tok.value)
        return -value if negative else value

    def rational(self) -> Fraction:
        numerator = self.integer()
        if self.at_sym("/"):
            self.next()
            tok = self.peek()
            if tok.kind != "int":
                self.fail(f"expected a denominator, found {tok.value!r}")
            self.next()
            denominator = int(tok.value)
            if denominator == 0:
                self.fail("zero denominator", tok)
            return Fraction(numerator, denominator)
        return Fraction(numerator)

    def at_rational(self) -> bool:
        tok = self.peek()
        return tok.kind == "int" or (tok.kind == "sym" and tok.value == "-")


# ---------------------------------------------------------------------------
# weight constraint programs


def _parse_constraint(s: _Stream) -> WeightConstraint:
    if not (s.at_rational() or s.at_sym("[")):
        return unit_constraint(s.literal())
    lower = s.rational() if s.at_rational() else None
    s.expect_sym("[")
    elements = []
    if not s.at_sym("]"):
        while True:
            literal = s.literal()
            s.expect_sym("=")
            elements.append(WeightedLiteral(literal, s.rational()))
            if s.at_sym(","):
                s.next()
                continue
            break
    s.expect_sym("]")
    upper = s.rational() if s.at_rational() else None
    bounds = Bounds(
        lower if lower is not None else float("-inf"),
        upper if upper is not None else float("inf"),
    )
    return WeightConstraint(bounds, tuple(elements))


def parse_weight_program(text: str, *, allow_reserved: bool = False) -> WeightProgram:
    s = _Stream(text, allow_reserved)
    rules = []
    while s.peek().kind != "eof":
        head = _parse_constraint(s)
        body = []
        if s.at_sym(":-"):
            s.next()
            body.append(_parse_constraint(s))
            while s.at_sym(","):
                s.next()
                body.append(_parse_constraint(s))
        s.expect_sym(".")
        rules.append(WeightRule(head, tuple(body)))
    return WeightProgram(tuple(rules))


# ---------------------------------------------------------------------------
# aggregate programs

_FUNCTIONS = {f.value: f for f in AggregateFunction}
_RELATIONS = {r.value: r for r in Relation}


def _parse_aggregate(s: _Stream) -> AggregateAtom:
    func = _FUNCTIONS[s.next().value]
    s.expect_sym("{")
    elements = []
    while True:
        atom = s.atom()
        # "p:-1" lexes the ':-' pair as the rule arrow; undo that here
        if s.at_sym(":-"):
            s.next()
            tok = s.peek()
            if tok.kind != "int":
                s.fail(f"expected an integer, found {tok.value!r}")
            s.next()
            value = -int(tok.value)
        else:
            s.expect_sym(":")
            value = s.integer()
        elements.append(AggregateElement(atom, value))
        if s.at_sym(","):
            s.next()
            continue
        break
    s.expect_sym("}")
    tok = s.peek()
    if tok.kind != "sym" or tok.value not in _RELATIONS:
        s.fail(f"expected a relational operator, found {tok.value!r}")
    s.next()
    return AggregateAtom(func, tuple(elements), _RELATIONS[tok.value], s.integer())


def parse_aggregate_program(text: str, *, allow_reserved: bool = False) -> AggregateProgram:
    s = _Stream(text, allow_reserved)
    rules = []
    while s.peek().kind != "eof":
        head = s.atom()
        body = []
        if s.at_sym(":-"):
            s.next()
            while True:
                tok = s.peek()
                if tok.kind == "ident" and tok.value in _FUNCTIONS and \
                        s.peek(1).kind == "sym" and s.peek(1).value == "{":
                    body.append(_parse_aggregate(s))
                else:
                    body.append(s.literal())
                if s.at_sym(","):
                    s.next()
                    continue
                break
        s.expect_sym(".")
        rules.append(AggregateRule(head, tuple(body)))
    return AggregateProgram(tuple(rules))


# ---------------------------------------------------------------------------
# nested programs


def _parse_formula(s: _Stream) -> NestedExpr:
    parts = [_parse_conjunction(s)]
    while s.at_sym(";"):
        s.next()
        parts.append(_parse_conjunction(s))
    return parts[0] if len(parts) == 1 else Or(tuple(parts))


def _parse_conjunction(s: _Stream) -> NestedExpr:
    parts = [_parse_unary(s)]
    while s.at_sym(","):
        s.next()
        parts.append(_parse_unary(s))
    return parts[0] if len(parts) == 1 else And(tuple(parts))


def _parse_unary(s: _Stream) -> NestedExpr:
    tok = s.peek()
    if tok.kind == "ident":
        if tok.value == "not":
            s.next()
            return Not(_parse_unary(s))
        if tok.value == "top":
            s.next()
            return TOP
        if tok.value == "bot":
            s.next()
            return BOTTOM
        return ref(s.atom())
    if s.at_sym("("):
        s.next()
        formula = _parse_formula(s)
        s.expect_sym(")")
        return formula
    s.fail(f"expected a formula, found {tok.value!r}" if tok.kind != "eof"
           else "expected a formula before end of input")


def parse_nested_program(text: str, *, allow_reserved: bool = False) -> NestedProgram:
    s = _Stream(text, allow_reserved)
    rules = []
    while s.peek().kind != "eof":
        head = _parse_formula(s)
        body: NestedExpr = TOP
        if s.at_sym(":-"):
            s.next()
            body = _parse_formula(s)
        s.expect_sym(".")
        rules.append(NestedRule(head, body))
    return NestedProgram(tuple(rules))


# ---------------------------------------------------------------------------
# rendering and format dispatch


def render_weight_program(program: WeightProgram) -> str:
    return str(program)


def render_aggregate_program(program: AggregateProgram) -> str:
    return str(program)


def render_nested_program(program: NestedProgram) -> str:
    return str(program)


def detect_format(path: str) -> Optional[str]:
    suffix = path.rsplit(".", 1)[-1].lower() if "." in path else ""
    return suffix if suffix in SOURCE_FORMATS else None


def parse_program(text: str, fmt: str, *, allow_reserved: bool = False):
    if fmt == "wc":
        return parse_weight_program(text, allow_reserved=allow_reserved)
    if fmt == "agg":
        return parse_aggregate_program(text, allow_reserved=allow_reserved)
    if fmt == "ne":
        return parse_nested_program(text, allow_reserved=allow_reserved)
    raise ValueError(f"unknown source format {fmt!r}")
