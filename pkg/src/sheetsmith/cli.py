"""Command-line front end.

Subcommands:
  analyze     metrics for one formula given on the command line
  scan        risk report over a CSV of formulas, tolerant of parse errors
  synthesize  build a formula from labelled examples (optionally interactive)
  validate    check a formula against labelled examples
  confidence  experiment summary plus plot-data files
  fit         exponential accuracy-vs-complexity fit

Exit status: 0 on success, 1 for domain errors (the stderr line starts with
``error: <Code>:`` naming the module error), 2 for usage or unreadable files.
File outputs are byte-identical across runs on equal inputs; --stamp opts in
to a generation-time comment line.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from typing import Optional

from . import csvio
from .confidence import (
    exceeds_base_error_ceiling,
    ExperimentSummary,
    fit_accuracy_curve,
    question_outcome,
    summarize_experiment,
)
from .errors import SheetsmithError, UsageError
from .evaluator import EvalError, validate_examples, Value
from .formulas import number_text, render
from .metrics import metrics_report
from .parser import parse
from .synthesis import (
    DEFAULT_SEARCH_BUDGET,
    example_grids,
    HypothesisConfig,
    LabeledExample,
    synthesize,
)

BUDGET_ENV_VAR = "SHEETSMITH_SEARCH_BUDGET"


@dataclass(frozen=True)
class RiskReportRow:
    """One scanned formula: either the metrics or a parse error, never both."""

    source_id: str
    formula: str
    n1: Optional[int] = None
    n2: Optional[int] = None
    N1: Optional[int] = None
    N2: Optional[int] = None
    complexity: Optional[float] = None
    out_of_range_flag: Optional[bool] = None
    volume: Optional[float] = None
    difficulty: Optional[float] = None
    effort: Optional[float] = None
    miller_concepts: Optional[int] = None
    miller_flag: Optional[bool] = None
    parse_error: Optional[str] = None


def risk_report_row(source_id: str, formula: str) -> RiskReportRow:
    """Metrics row for a formula, with parse failures captured, not raised."""
    try:
        report = metrics_report(parse(formula))
    except SheetsmithError as exc:
        return RiskReportRow(
            source_id=source_id, formula=formula, parse_error=f"{exc.code}: {exc}"
        )
    return RiskReportRow(
        source_id=source_id,
        formula=formula,
        n1=report.counts.n1,
        n2=report.counts.n2,
        N1=report.counts.N1,
        N2=report.counts.N2,
        complexity=report.complexity,
        out_of_range_flag=report.out_of_range_flag,
        volume=report.volume,
        difficulty=report.difficulty,
        effort=report.effort,
        miller_concepts=report.miller_concepts,
        miller_flag=report.miller_flag,
    )


def _cell_text(value) -> str:
    """Deterministic CSV cell: lowercase booleans, repr floats, '' for None."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _value_text(value: Value) -> str:
    if isinstance(value, EvalError):
        return f"#{value.kind}"
    if isinstance(value, bool):
        return "TRUE" if value else "FALSE"
    if isinstance(value, float):
        return number_text(value)
    return '"' + str(value) + '"'


def _stamp_line(stream) -> None:
    now = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    stream.write(f"# generated {now}\n")


def _write_csv(path_or_stream, header, rows, stamp=False):
    if isinstance(path_or_stream, str):
        with open(path_or_stream, "w", newline="", encoding="utf-8") as handle:
            _write_csv(handle, header, rows, stamp)
        return
    if stamp:
        _stamp_line(path_or_stream)
    writer = csv.writer(path_or_stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell_text(cell) for cell in row])


_ROW_FIELDS = tuple(RiskReportRow.__dataclass_fields__)


# ----- analyze ---------------------------------------------------------


def _cmd_analyze(args) -> int:
    ast = parse(args.formula)
    report = metrics_report(ast)
    row = RiskReportRow(
        source_id="-",
        formula=args.formula,
        n1=report.counts.n1,
        n2=report.counts.n2,
        N1=report.counts.N1,
        N2=report.counts.N2,
        complexity=report.complexity,
        out_of_range_flag=report.out_of_range_flag,
        volume=report.volume,
        difficulty=report.difficulty,
        effort=report.effort,
        miller_concepts=report.miller_concepts,
        miller_flag=report.miller_flag,
    )
    if args.format == "table":
        pairs = [
            ("formula", args.formula),
            ("canonical", render(ast)),
            ("n1", report.counts.n1),
            ("n2", report.counts.n2),
            ("N1", report.counts.N1),
            ("N2", report.counts.N2),
            ("complexity", report.complexity),
            ("out_of_range_flag", report.out_of_range_flag),
            ("volume", report.volume),
            ("difficulty", report.difficulty),
            ("effort", report.effort),
            ("miller_concepts", report.miller_concepts),
            ("miller_flag", report.miller_flag),
        ]
        width = max(len(name) for name, _ in pairs)
        for name, value in pairs:
            print(f"{name:<{width}}  {_cell_text(value)}")
    elif args.format == "csv":
        _write_csv(sys.stdout, _ROW_FIELDS, [list(asdict(row).values())])
    else:
        print(json.dumps(asdict(row), indent=2))
    return 0


# ----- scan ------------------------------------------------------------


def _cmd_scan(args) -> int:
    entries = csvio.read_formulas_csv(args.path)
    rows = [risk_report_row(source_id, text) for source_id, text in entries]
    if args.format == "json":
        payload = json.dumps([asdict(row) for row in rows], indent=2)
        if args.output == "-":
            print(payload)
        else:
            with open(args.output, "w", encoding="utf-8") as handle:
                handle.write(payload + "\n")
    else:
        target = sys.stdout if args.output == "-" else args.output
        _write_csv(
            target,
            _ROW_FIELDS,
            [list(asdict(row).values()) for row in rows],
            stamp=args.stamp,
        )
    flagged = sum(1 for row in rows if row.miller_flag)
    if args.fail_on_miller and flagged:
        print(
            f"error: MillerLimit: {flagged} of {len(rows)} formulas "
            "exceed the concept limit",
            file=sys.stderr,
        )
        return 1
    return 0


# ----- synthesize ------------------------------------------------------


def _search_budget() -> int:
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw is None:
        return DEFAULT_SEARCH_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise UsageError(
            f"{BUDGET_ENV_VAR} must be an integer, got {raw!r}"
        ) from None


def _cmd_synthesize(args) -> int:
    examples = csvio.read_examples_csv(args.examples)
    if not examples:
        # keep the library's own empty-input error and wording
        synthesize(examples)
    names = list(examples[0].attributes.keys())
    config = HypothesisConfig(max_decision_depth=args.max_depth)
    budget = _search_budget()
    while True:
        result = synthesize(examples, config, search_budget=budget)
        report = result.training_report
        print(f"formula: {result.rendered}")
        print(f"training: {report.passes}/{report.total} pass")
        print(f"candidates explored: {result.candidates_explored}")
        if not args.interactive:
            return 0
        added = None
        while added is None:
            try:
                line = input(
                    f"counter-example ({','.join(names)},label), blank to accept: "
                )
            except EOFError:
                return 0
            line = line.strip()
            if line in ("", "accept"):
                return 0
            parts = [part.strip() for part in line.split(",")]
            if len(parts) != len(names) + 1:
                print(
                    f"need {len(names) + 1} comma-separated fields, "
                    f"got {len(parts)}",
                    file=sys.stderr,
                )
                continue
            try:
                values = {name: float(text) for name, text in zip(names, parts)}
            except ValueError:
                print("attribute values must be numbers", file=sys.stderr)
                continue
            added = LabeledExample(values, parts[-1])
        examples = list(examples) + [added]


# ----- validate --------------------------------------------------------


def _cmd_validate(args) -> int:
    ast = parse(args.formula)
    examples = csvio.read_examples_csv(args.examples)
    pairs = example_grids(examples)
    report = validate_examples(ast, pairs)
    for outcome in report.outcomes:
        if outcome.passed:
            print(f"example {outcome.index + 1}: pass")
        else:
            print(
                f"example {outcome.index + 1}: FAIL expected "
                f"{_value_text(outcome.expected)} got {_value_text(outcome.actual)}"
            )
    print(f"{report.passes}/{report.total} pass")
    return 0


# ----- confidence ------------------------------------------------------


def _summary_tables(summary: ExperimentSummary) -> str:
    lines = []
    header = (
        f"{'approach':<12} {'question':<10} {'complexity':>10} {'accuracy%':>9} "
        f"{'mean_err':>8} {'mean_ratio':>10}"
    )
    lines.append(header)
    for q in summary.questions:
        lines.append(
            f"{q.approach:<12} {q.question_id:<10} {q.complexity:>10.4f} "
            f"{_opt(q.percentage_accuracy):>9} {_opt(q.mean_errors):>8} "
            f"{_opt(q.mean_confidence_ratio):>10}"
        )
    lines.append("")
    lines.append(
        f"{'approach':<12} {'participants':>12} {'with_errors%':>12} "
        f"{'accuracy%':>9} {'mean_err':>8} {'mean_ratio':>10}"
    )
    for a in summary.approaches:
        lines.append(
            f"{a.approach:<12} {a.participants:>12} "
            f"{_opt(a.percentage_models_with_errors):>12} "
            f"{_opt(a.percentage_accuracy):>9} "
            f"{_opt(a.mean_errors_per_question):>8} "
            f"{_opt(a.mean_confidence_ratio):>10}"
        )
    return "\n".join(lines)


def _opt(value: Optional[float]) -> str:
    return "-" if value is None else f"{value:.4g}"


def _cmd_confidence(args) -> int:
    records = csvio.read_results_csv(args.results)
    complexities = csvio.read_complexities_csv(args.complexities)
    summary = summarize_experiment(records, complexities)
    os.makedirs(args.out_dir, exist_ok=True)

    def path(name: str) -> str:
        return os.path.join(args.out_dir, name)

    outcome_rows = []
    for record in records:
        outcome = question_outcome(record)
        outcome_rows.append(
            [
                record.participant_id,
                record.question_id,
                record.approach,
                outcome.f_score,
                outcome.combined_overconfidence,
                outcome.confidence_ratio,
            ]
        )
    _write_csv(
        path("outcomes.csv"),
        [
            "participant_id",
            "question_id",
            "approach",
            "f_score",
            "combined_overconfidence",
            "confidence_ratio",
        ],
        outcome_rows,
        stamp=args.stamp,
    )

    _write_csv(
        path("summary_questions.csv"),
        [
            "approach",
            "question_id",
            "complexity",
            "attempted",
            "percentage_accuracy",
            "mean_errors",
            "mean_confidence_ratio",
            "mean_difficulty",
        ],
        [
            [
                q.approach,
                q.question_id,
                q.complexity,
                q.attempted,
                q.percentage_accuracy,
                q.mean_errors,
                q.mean_confidence_ratio,
                q.mean_difficulty,
            ]
            for q in summary.questions
        ],
        stamp=args.stamp,
    )
    _write_csv(
        path("summary_approaches.csv"),
        [
            "approach",
            "participants",
            "percentage_models_with_errors",
            "percentage_accuracy",
            "mean_errors_per_question",
            "mean_confidence_ratio",
        ],
        [
            [
                a.approach,
                a.participants,
                a.percentage_models_with_errors,
                a.percentage_accuracy,
                a.mean_errors_per_question,
                a.mean_confidence_ratio,
            ]
            for a in summary.approaches
        ],
        stamp=args.stamp,
    )

    for approach_row in summary.approaches:
        approach = approach_row.approach
        mine = [q for q in summary.questions if q.approach == approach]
        accuracy = sorted(mine, key=lambda q: (q.complexity, q.question_id))
        # points.csv shape, so the file feeds `fit --points` directly
        _write_csv(
            path(f"accuracy_vs_complexity_{approach}.csv"),
            ["complexity", "accuracy_pct"],
            [[q.complexity, q.percentage_accuracy] for q in accuracy],
            stamp=args.stamp,
        )
        _write_csv(
            path(f"confidence_ratio_{approach}.csv"),
            ["question_id", "mean_confidence_ratio", "mean_difficulty"],
            [[q.question_id, q.mean_confidence_ratio, q.mean_difficulty] for q in mine],
            stamp=args.stamp,
        )

    print(_summary_tables(summary))
    return 0


# ----- fit -------------------------------------------------------------


def _cmd_fit(args) -> int:
    points = csvio.read_points_csv(args.points)
    fit = fit_accuracy_curve(points)
    usable_x = [x for x, y in points if y > 0]
    ceiling_exceeded = exceeds_base_error_ceiling(fit, min(usable_x), args.ceiling)
    payload = {
        "a": fit.a,
        "b": fit.b,
        "r_squared": fit.r_squared,
        "points_used": fit.points_used,
        "points_dropped": fit.points_dropped,
        "ceiling_exceeded": ceiling_exceeded,
    }
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    elif args.format == "csv":
        _write_csv(sys.stdout, list(payload), [list(payload.values())])
    else:
        for name, value in payload.items():
            print(f"{name}: {_cell_text(value)}")
        if ceiling_exceeded:
            print(
                f"note: extrapolation at the easiest question exceeds the "
                f"{args.ceiling}% base-error ceiling"
            )
    return 0


# ----- wiring ----------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sheetsmith",
        description="Spreadsheet formula risk metrics, validation, and synthesis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="metrics for one formula")
    p.add_argument("formula")
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p.set_defaults(handler=_cmd_analyze)

    p = sub.add_parser("scan", help="risk report over a formulas CSV")
    p.add_argument("path", help="CSV with header source_id,formula")
    p.add_argument("--output", "-o", default="-", help="output path ('-' = stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument(
        "--fail-on-miller",
        action="store_true",
        help="exit 1 if any formula exceeds the concept limit",
    )
    p.add_argument("--stamp", action="store_true", help="add a timestamp comment")
    p.set_defaults(handler=_cmd_scan)

    p = sub.add_parser("synthesize", help="build a formula from examples")
    p.add_argument("--examples", required=True, help="CSV of attributes + label")
    p.add_argument("--max-depth", type=int, default=5)
    p.add_argument(
        "--interactive",
        action="store_true",
        help="offer to add counter-examples and re-synthesize",
    )
    p.set_defaults(handler=_cmd_synthesize)

    p = sub.add_parser("validate", help="check a formula against examples")
    p.add_argument("--formula", required=True)
    p.add_argument("--examples", required=True)
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("confidence", help="experiment summary and plot data")
    p.add_argument("--results", required=True)
    p.add_argument("--complexities", required=True)
    p.add_argument("--out-dir", default=".")
    p.add_argument("--stamp", action="store_true", help="add a timestamp comment")
    p.set_defaults(handler=_cmd_confidence)

    p = sub.add_parser("fit", help="fit accuracy = a*exp(b*complexity)")
    p.add_argument("--points", required=True)
    p.add_argument("--ceiling", type=float, default=95.0)
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p.set_defaults(handler=_cmd_fit)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.handler(args)
    except SheetsmithError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return exc.exit_status
    except OSError as exc:
        print(f"error: InputFile: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
