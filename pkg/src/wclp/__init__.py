"""Weight constraint, aggregate, and nested-expression logic programs.

An executable semantics at desk scale: stable models and conditional-
satisfaction answer sets for ground weight constraint programs, answer
sets for aggregate programs, stable models for programs with nested
expressions, the translations relating them, and the strong-satisfiability
and circular-justification checkers.
"""

from .model import (
    Atom,
    Bounds,
    Interpretation,
    Literal,
    ModelError,
    RefusalError,
    WeightConstraint,
    WeightProgram,
    WeightRule,
    WeightedLiteral,
    eliminate_negative_weights,
    normalize_program,
    to_basic,
    unit_constraint,
    wc,
    wlit,
)
from .semantics import (
    SemanticsReport,
    analyze_model,
    answer_sets,
    circularity_witness,
    cond_satisfies_wc,
    instance_of,
    is_answer_set,
    is_stable_model,
    kp_fixpoint,
    reduct_constraint,
    reduct_program,
    stable_models,
    strongly_satisfiable,
    strongly_satisfiable_by,
    syntactically_strongly_satisfiable,
    tp_closure,
)
from .aggregates import (
    AggregateAtom,
    AggregateElement,
    AggregateFunction,
    AggregateProgram,
    AggregateRule,
    Relation,
    agg_answer_sets,
    cond_satisfies_agg,
)
from .nested import (
    And,
    AtomRef,
    Bottom,
    NestedProgram,
    NestedRule,
    Not,
    Or,
    Top,
    formula_reduct,
    satisfies_formula,
    stable_models_ne,
)
from .transforms import (
    AggregateEncoding,
    FreshNames,
    SSEncoding,
    encode_aggregate,
    fl_program,
    ne_encode_wc,
    ne_program,
    ss_encode,
    tau_program,
    tr_program,
)
from .syntax import (
    Diagnostic,
    ParseError,
    parse_aggregate_program,
    parse_nested_program,
    parse_weight_program,
    render_aggregate_program,
    render_nested_program,
    render_weight_program,
)

__version__ = "0.1.0"
