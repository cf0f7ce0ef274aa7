"""Synthesis of grading formulas from labelled example rows.

The hypothesis space is decision lists over threshold predicates: each rule
compares one aggregate of the row (MIN, MAX, AVERAGE, SUM, or a single
attribute) against a constant and emits a label; an example falls through to
the first rule whose predicate it satisfies, or to the default label. A list
compiles to nested IFs, so the output is an ordinary formula that can be
audited with the metrics module like any hand-written one.

Search is deterministic and returns the first consistent list in a fixed
total order: depth 1 upward, and within a depth a depth-first walk that tries
candidates at every slot in enumerate_candidates order. A rule's label is
forced by the examples it captures, so candidate lists whose rule would mix
labels are pruned, and rules capturing nothing are skipped; neither pruning
can change which list is reached first at the minimal depth.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .errors import (
    EmptyLabelError,
    HypothesisSpaceExhaustedError,
    InconsistentExamplesError,
    SearchBudgetExceededError,
)
from .evaluator import Grid, ValidationReport, validate_examples
from .formulas import (
    BinaryOp,
    CellRef,
    column_index,
    column_letters,
    FormulaAst,
    FunctionCall,
    Node,
    NumberLiteral,
    RangeRef,
    render,
    TextLiteral,
    UnaryOp,
)
from .metrics import MetricsReport, metrics_report

SINGLE_ATTRIBUTE = "ATTRIBUTE"

DEFAULT_AGGREGATES = ("MIN", "MAX", "AVERAGE", "SUM", SINGLE_ATTRIBUTE)

# The two comparators the studied grading formulas actually use; keeping the
# default set this small also keeps the searched space and output style tight.
DEFAULT_COMPARATORS = ("<", ">=")

DEFAULT_SEARCH_BUDGET = 10_000_000


@dataclass(frozen=True)
class LabeledExample:
    """One training row: attribute name -> numeric value, plus its label."""

    attributes: dict[str, float]
    label: str


@dataclass(frozen=True)
class HypothesisConfig:
    aggregates: tuple[str, ...] = DEFAULT_AGGREGATES
    comparators: tuple[str, ...] = DEFAULT_COMPARATORS
    max_decision_depth: int = 5
    cell_assignment: Optional[Mapping[str, str]] = None


@dataclass(frozen=True)
class Predicate:
    """aggregate(row) comparator threshold, e.g. AVERAGE < 54.75."""

    aggregate: str
    comparator: str
    threshold: float
    attribute: Optional[str] = None


@dataclass(frozen=True)
class SynthesisResult:
    formula: FormulaAst
    rendered: str
    training_report: ValidationReport
    candidates_explored: int
    metrics: MetricsReport


def _attribute_names(examples: Sequence[LabeledExample]) -> tuple[str, ...]:
    names = tuple(examples[0].attributes.keys())
    for example in examples[1:]:
        if tuple(example.attributes.keys()) != names:
            raise ValueError("examples disagree on attribute names or order")
    return names


def _check_examples(examples: Sequence[LabeledExample]) -> None:
    if not examples:
        raise EmptyLabelError("no labelled examples were given")
    seen: dict[tuple, str] = {}
    for index, example in enumerate(examples):
        if example.label == "":
            raise EmptyLabelError(f"example {index} has an empty label")
        row = tuple(example.attributes.values())
        if row in seen and seen[row] != example.label:
            raise InconsistentExamplesError(
                f"identical rows {row} are labelled both "
                f"{seen[row]!r} and {example.label!r}"
            )
        seen.setdefault(row, example.label)


def _aggregate_values(
    aggregate: str, attribute: Optional[str], examples: Sequence[LabeledExample]
) -> list[float]:
    out = []
    for example in examples:
        values = list(example.attributes.values())
        if aggregate == "MIN":
            out.append(min(values))
        elif aggregate == "MAX":
            out.append(max(values))
        elif aggregate == "AVERAGE":
            out.append(statistics.fmean(values))
        elif aggregate == "SUM":
            out.append(float(sum(values)))
        else:
            out.append(float(example.attributes[attribute]))
    return out


def _thresholds(values: Sequence[float]) -> list[float]:
    """Sorted distinct values interleaved with midpoints of adjacent pairs."""
    distinct = sorted(set(values))
    out = []
    for i, value in enumerate(distinct):
        if i:
            out.append((distinct[i - 1] + value) / 2)
        out.append(value)
    return out


def _families(
    config: HypothesisConfig, names: Sequence[str]
) -> list[tuple[str, Optional[str]]]:
    families: list[tuple[str, Optional[str]]] = []
    for aggregate in config.aggregates:
        if aggregate == SINGLE_ATTRIBUTE:
            families.extend((SINGLE_ATTRIBUTE, name) for name in names)
        else:
            families.append((aggregate, None))
    return families


def enumerate_candidates(
    examples: Sequence[LabeledExample], config: Optional[HypothesisConfig] = None
) -> list[Predicate]:
    """All threshold predicates for an example set, in search order.

    Order is: aggregates as configured (each attribute in turn for the
    single-attribute family), then thresholds ascending, then comparators as
    configured. Thresholds are the observed aggregate values plus midpoints
    of adjacent distinct values.
    """
    config = config or HypothesisConfig()
    _check_examples(examples)
    names = _attribute_names(examples)
    candidates = []
    for aggregate, attribute in _families(config, names):
        values = _aggregate_values(aggregate, attribute, examples)
        for threshold in _thresholds(values):
            for comparator in config.comparators:
                candidates.append(
                    Predicate(aggregate, comparator, threshold, attribute)
                )
    return candidates


def _satisfies(value: float, comparator: str, threshold: float) -> bool:
    if comparator == "<":
        return value < threshold
    if comparator == "<=":
        return value <= threshold
    if comparator == ">":
        return value > threshold
    return value >= threshold


def default_cell_assignment(names: Sequence[str]) -> dict[str, str]:
    """First attribute in C5, then D5, E5, ... along row 5."""
    start = column_index("C")
    return {name: f"{column_letters(start + i)}5" for i, name in enumerate(names)}


def _cell_node(ref: str) -> CellRef:
    letters = ref.rstrip("0123456789")
    return CellRef(letters.upper(), int(ref[len(letters):]))


def _aggregate_node(
    predicate: Predicate, names: Sequence[str], assignment: Mapping[str, str]
) -> Node:
    if predicate.aggregate == SINGLE_ATTRIBUTE:
        return _cell_node(assignment[predicate.attribute])
    refs = [_cell_node(assignment[name]) for name in names]
    if len(refs) == 1:
        return FunctionCall(predicate.aggregate, (refs[0],))
    contiguous = all(r.row == refs[0].row for r in refs) and all(
        column_index(refs[i + 1].column) == column_index(refs[i].column) + 1
        for i in range(len(refs) - 1)
    )
    if contiguous:
        return FunctionCall(
            predicate.aggregate, (RangeRef(refs[0], refs[-1]),)
        )
    return FunctionCall(predicate.aggregate, tuple(refs))


def _number_node(value: float) -> Node:
    if value < 0:
        return UnaryOp(NumberLiteral(-value))
    return NumberLiteral(value)


def _compile(
    rules: Sequence[tuple[Predicate, str]],
    default: str,
    names: Sequence[str],
    assignment: Mapping[str, str],
) -> FormulaAst:
    node: Node = TextLiteral(default)
    for predicate, label in reversed(rules):
        condition = BinaryOp(
            predicate.comparator,
            _aggregate_node(predicate, names, assignment),
            _number_node(predicate.threshold),
        )
        node = FunctionCall("IF", (condition, TextLiteral(label), node))
    return FormulaAst(node)


def example_grids(
    examples: Sequence[LabeledExample],
    assignment: Optional[Mapping[str, str]] = None,
) -> list[tuple[Grid, str]]:
    """(grid, expected label) pairs for validating against the examples."""
    names = _attribute_names(examples)
    assignment = dict(assignment) if assignment else default_cell_assignment(names)
    return [
        (
            Grid({assignment[name]: value for name, value in ex.attributes.items()}),
            ex.label,
        )
        for ex in examples
    ]


def synthesize(
    examples: Sequence[LabeledExample],
    config: Optional[HypothesisConfig] = None,
    search_budget: int = DEFAULT_SEARCH_BUDGET,
) -> SynthesisResult:
    """Find the first decision list consistent with every example.

    The budget counts candidate placements tried during the search; exceeding
    it raises SearchBudgetExceeded. A consistent list is re-checked through
    the evaluator before being returned, so the training report always shows
    a full pass.
    """
    config = config or HypothesisConfig()
    _check_examples(examples)
    names = _attribute_names(examples)
    assignment = (
        dict(config.cell_assignment)
        if config.cell_assignment
        else default_cell_assignment(names)
    )
    if len(set(assignment.values())) != len(assignment):
        raise ValueError("cell assignment maps two attributes to one cell")

    labels: list[str] = []
    for example in examples:
        if example.label not in labels:
            labels.append(example.label)

    grids = example_grids(examples, assignment)

    if len(labels) == 1:
        formula = FormulaAst(TextLiteral(labels[0]))
        return SynthesisResult(
            formula=formula,
            rendered=render(formula),
            training_report=validate_examples(formula, grids),
            candidates_explored=0,
            metrics=metrics_report(formula),
        )

    predicates = enumerate_candidates(examples, config)
    count = len(examples)
    full_mask = (1 << count) - 1
    masks = []
    for predicate in predicates:
        values = _aggregate_values(predicate.aggregate, predicate.attribute, examples)
        mask = 0
        for i, value in enumerate(values):
            if _satisfies(value, predicate.comparator, predicate.threshold):
                mask |= 1 << i
        masks.append(mask)
    label_masks = {label: 0 for label in labels}
    for i, example in enumerate(examples):
        label_masks[example.label] |= 1 << i

    explored = 0
    best_passes = max(m.bit_count() for m in label_masks.values())

    def note_best(alive: int) -> None:
        nonlocal best_passes
        settled = count - alive.bit_count()
        fallback = max((alive & m).bit_count() for m in label_masks.values())
        best_passes = max(best_passes, settled + fallback)

    def extend(
        alive: int, slots: int, rules: list[tuple[Predicate, str]]
    ) -> Optional[tuple[list[tuple[Predicate, str]], str]]:
        nonlocal explored
        note_best(alive)
        for predicate, mask in zip(predicates, masks):
            explored += 1
            if explored > search_budget:
                raise SearchBudgetExceededError(
                    f"synthesis stopped after {search_budget} candidate placements"
                )
            captured = alive & mask
            if captured == 0:
                continue
            rule_label = None
            for label in labels:
                if captured & label_masks[label] == captured:
                    rule_label = label
                    break
            if rule_label is None:
                continue  # mixed capture: every completion would misclassify
            remaining = alive & ~captured
            new_rules = rules + [(predicate, rule_label)]
            if slots == 1:
                if remaining == 0:
                    return new_rules, labels[0]
                for label in labels:
                    if remaining & label_masks[label] == remaining:
                        return new_rules, label
                note_best(remaining)
                continue
            if remaining == 0:
                continue  # deeper slots would capture nothing
            found = extend(remaining, slots - 1, new_rules)
            if found is not None:
                return found
        return None

    result = None
    for depth in range(1, config.max_decision_depth + 1):
        result = extend(full_mask, depth, [])
        if result is not None:
            break
    if result is None:
        rate = 100.0 * best_passes / count
        raise HypothesisSpaceExhaustedError(
            f"no decision list up to depth {config.max_decision_depth} fits all "
            f"{count} examples; best candidate passes {rate:.1f}%",
            best_pass_rate=rate,
        )

    rules, default = result
    formula = _compile(rules, default, names, assignment)
    report = validate_examples(formula, grids)
    if not report.all_passed:
        raise AssertionError("synthesized formula failed its own training set")
    return SynthesisResult(
        formula=formula,
        rendered=render(formula),
        training_report=report,
        candidates_explored=explored,
        metrics=metrics_report(formula),
    )
