"""Command line interface.

    wclp solve --semantics {stable,answer,ne-stable} [--format F] [--jobs N] FILE
    wclp translate --to {tr,tau,tau-tr,ne,fl} [--out FILE] FILE
    wclp check strong-sat FILE
    wclp check circular --model a,b,... FILE
    wclp report [--out FILE] [--figures DIR] FILE

Models print one per line as sorted comma-separated atoms, lexicographic
across models, so identical inputs give byte-identical output. Exit codes:
0 success, 1 usage or parse error, 2 enumeration-cap or unsupported-feature
refusal.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .aggregates import AggregateProgram, agg_answer_sets, is_agg_answer_set
from .model import Atom, ModelError, RefusalError, sort_models
from .nested import is_stable_model_ne, stable_models_ne
from .report import build_reports, render_table, save_figures
from .semantics import (
    DEFAULT_ATOM_CAP,
    EnumerationCapError,
    answer_sets,
    circularity_witness,
    is_answer_set,
    is_stable_model,
    stable_models,
    strongly_satisfiable,
    syntactically_strongly_satisfiable,
)
from .syntax import ParseError, detect_format, parse_program
from .transforms import fl_program, ne_program, tau_program, tr_program

_SEMANTICS_BY_FORMAT = {
    "wc": ("stable", "answer"),
    "agg": ("answer",),
    "ne": ("ne-stable",),
}

_TARGETS = {
    # target: (source format, result format)
    "tr": ("wc", "wc"),
    "tau": ("agg", "wc"),
    "tau-tr": ("agg", "wc"),
    "ne": ("wc", "ne"),
    "fl": ("wc", "ne"),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); the contract wants 1
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="wclp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="enumerate models under a semantics")
    solve.add_argument("--semantics", required=True,
                       choices=("stable", "answer", "ne-stable"))
    solve.add_argument("--format", choices=("wc", "agg", "ne"))
    solve.add_argument("--jobs", type=int, default=1,
                       help="worker processes for the enumeration (default 1)")
    solve.add_argument("--cap", type=int, default=DEFAULT_ATOM_CAP,
                       help=f"atom cap for enumeration (default {DEFAULT_ATOM_CAP})")
    solve.add_argument("file")

    translate = sub.add_parser("translate", help="translate between program classes")
    translate.add_argument("--to", required=True, choices=tuple(_TARGETS))
    translate.add_argument("--out", help="write here instead of stdout")
    translate.add_argument("--format", choices=("wc", "agg", "ne"))
    translate.add_argument("file")

    check = sub.add_parser("check", help="run a checker over a .wc program")
    check_sub = check.add_subparsers(dest="checker", required=True)
    strong = check_sub.add_parser("strong-sat", help="strong satisfiability per body constraint")
    strong.add_argument("file")
    circ = check_sub.add_parser("circular", help="circular-justification witness for a stable model")
    circ.add_argument("--model", required=True,
                      help="comma-separated atoms; empty string for the empty model")
    circ.add_argument("file")

    report = sub.add_parser("report", help="per-model semantics table (and figures)")
    report.add_argument("--out", help="write the table here; figures land next to it")
    report.add_argument("--figures", help="directory for figures")
    report.add_argument("--cap", type=int, default=DEFAULT_ATOM_CAP)
    report.add_argument("file")
    return parser


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _load(path: str, fmt_flag, *, allow_reserved: bool):
    fmt = fmt_flag or detect_format(path)
    if fmt is None:
        raise UsageError(
            f"cannot infer the format of {path!r}; pass --format wc|agg|ne"
        )
    return parse_program(_read(path), fmt, allow_reserved=allow_reserved), fmt


def _model_line(model) -> str:
    return ",".join(sorted(a.name for a in model))


def _check_model(program, kind: str, model) -> bool:
    if kind == "stable":
        return is_stable_model(program, model)
    if kind == "ne-stable":
        return is_stable_model_ne(program, model)
    if isinstance(program, AggregateProgram):
        return is_agg_answer_set(program, model)
    return is_answer_set(program, model)


def _solve_range(args):
    program, kind, atoms, start, stop = args
    hits = []
    for mask in range(start, stop):
        model = frozenset(atoms[i] for i in range(len(atoms)) if mask >> i & 1)
        if _check_model(program, kind, model):
            hits.append(model)
    return hits


def _solve_parallel(program, kind: str, jobs: int, cap: int) -> list:
    atoms = sorted(program.atoms())
    if len(atoms) > cap:
        raise EnumerationCapError(len(atoms), cap)
    total = 1 << len(atoms)
    jobs = max(1, min(jobs, total))
    step = -(-total // jobs)
    chunks = [
        (program, kind, atoms, lo, min(lo + step, total))
        for lo in range(0, total, step)
    ]
    models = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for found in pool.map(_solve_range, chunks):
            models.extend(found)
    return sort_models(models)


def _cmd_solve(args, out) -> int:
    program, fmt = _load(args.file, args.format, allow_reserved=True)
    if args.semantics not in _SEMANTICS_BY_FORMAT[fmt]:
        raise UsageError(
            f"--semantics {args.semantics} does not apply to a .{fmt} program; "
            f"supported here: {', '.join(_SEMANTICS_BY_FORMAT[fmt])}"
        )
    if args.jobs > 1:
        models = _solve_parallel(program, args.semantics, args.jobs, args.cap)
    elif args.semantics == "stable":
        models = stable_models(program, args.cap)
    elif args.semantics == "ne-stable":
        models = stable_models_ne(program, args.cap)
    elif isinstance(program, AggregateProgram):
        models = agg_answer_sets(program, args.cap)
    else:
        models = answer_sets(program, args.cap)
    for model in models:
        print(_model_line(model), file=out)
    return 0


def _cmd_translate(args, out) -> int:
    source_fmt, _ = _TARGETS[args.to]
    program, fmt = _load(args.file, args.format, allow_reserved=False)
    if fmt != source_fmt:
        raise UsageError(f"translate --to {args.to} expects a .{source_fmt} source, got .{fmt}")
    if args.to == "tr":
        result = tr_program(program)
    elif args.to == "tau":
        result = tau_program(program)
    elif args.to == "tau-tr":
        result = tr_program(tau_program(program))
    elif args.to == "ne":
        result = ne_program(program)
    else:
        result = fl_program(program)
    text = str(result)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    return 0


def _cmd_check(args, out) -> int:
    program, fmt = _load(args.file, None, allow_reserved=True)
    if fmt != "wc":
        raise UsageError(f"check applies to .wc programs, got .{fmt}")
    if args.checker == "strong-sat":
        all_strong = True
        for index, rule in enumerate(program.rules, start=1):
            for constraint in rule.body:
                exact = strongly_satisfiable(constraint)
                if syntactically_strongly_satisfiable(constraint) and not exact:
                    raise ModelError(
                        f"syntactic check accepted '{constraint}' but the exact check refused"
                    )
                all_strong &= exact
                verdict = "strongly satisfiable" if exact else "NOT strongly satisfiable"
                print(f"rule {index}: {constraint}: {verdict}", file=out)
        verdict = "strongly satisfiable" if all_strong else "NOT strongly satisfiable"
        print(f"program: {verdict}", file=out)
        return 0
    names = [piece for piece in args.model.split(",") if piece]
    try:
        model = frozenset(Atom(name) for name in names)
    except ModelError as exc:
        raise UsageError(str(exc)) from exc
    try:
        witness = circularity_witness(program, model)
    except ModelError as exc:
        raise UsageError(str(exc)) from exc
    if witness is None:
        print("not circular", file=out)
    else:
        print(f"circular: witness {_model_line(witness)}", file=out)
    return 0


def _cmd_report(args, out) -> int:
    program, fmt = _load(args.file, None, allow_reserved=True)
    if fmt != "wc":
        raise UsageError(f"report applies to .wc programs, got .{fmt}")
    reports = build_reports(program, args.cap)
    table = render_table(reports)
    figures_dir = args.figures
    stem = Path(args.file).stem
    if args.out:
        Path(args.out).write_text(table, encoding="utf-8")
        if figures_dir is None:
            figures_dir = Path(args.out).parent
            stem = Path(args.out).stem
    else:
        out.write(table)
    if figures_dir is not None:
        for path in save_figures(reports, program.atoms(), figures_dir, stem):
            print(f"wrote {path}", file=sys.stderr)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "solve":
            return _cmd_solve(args, sys.stdout)
        if args.command == "translate":
            return _cmd_translate(args, sys.stdout)
        if args.command == "check":
            return _cmd_check(args, sys.stdout)
        return _cmd_report(args, sys.stdout)
    except (UsageError, ParseError, ModelError) as exc:
        print(f"wclp: error: {exc}", file=sys.stderr)
        return 1
    except RefusalError as exc:
        print(f"wclp: refused: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
