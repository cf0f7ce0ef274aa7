"""Decision-list search over labelled rows.

Everything here is deterministic: the search order is pinned, so so is the
first consistent formula it returns.
"""

import pytest

from sheetsmith import (
    EmptyLabelError,
    enumerate_candidates,
    evaluate,
    example_grids,
    Grid,
    HypothesisConfig,
    HypothesisSpaceExhaustedError,
    InconsistentExamplesError,
    LabeledExample,
    parse,
    Predicate,
    SearchBudgetExceededError,
    semantic_equivalence,
    synthesize,
)

GRADES = [
    (20, 30, "Fail"), (39, 80, "Fail"), (80, 39, "Fail"),
    (40, 40, "Pass"), (54, 55, "Pass"), (40, 58, "Pass"),
    (40, 70, "Merit"), (69, 70, "Merit"), (55, 57, "Merit"),
    (70, 70, "Dist"), (41, 99, "Dist"), (100, 100, "Dist"),
]


def rows(pairs):
    return [
        LabeledExample({"exam": float(e), "coursework": float(c)}, label)
        for e, c, label in pairs
    ]


def test_thresholds_interleave_midpoints():
    examples = [
        LabeledExample({"x": 30.0}, "a"),
        LabeledExample({"x": 47.5}, "a"),
        LabeledExample({"x": 55.0}, "b"),
        LabeledExample({"x": 75.0}, "b"),
    ]
    candidates = enumerate_candidates(examples)
    min_lt = [c.threshold for c in candidates
              if c.aggregate == "MIN" and c.comparator == "<"]
    assert min_lt == [30, 38.75, 47.5, 51.25, 55, 65, 75]


def test_candidate_order_is_families_then_thresholds_then_comparators():
    examples = [
        LabeledExample({"x": 1.0}, "a"),
        LabeledExample({"x": 3.0}, "b"),
    ]
    candidates = enumerate_candidates(
        examples, HypothesisConfig(aggregates=("MIN",), comparators=("<", ">="))
    )
    assert candidates == [
        Predicate("MIN", "<", 1.0),
        Predicate("MIN", ">=", 1.0),
        Predicate("MIN", "<", 2.0),
        Predicate("MIN", ">=", 2.0),
        Predicate("MIN", "<", 3.0),
        Predicate("MIN", ">=", 3.0),
    ]


def test_single_label_synthesises_a_constant():
    result = synthesize([LabeledExample({"score": 10.0}, "Pass")])
    assert result.rendered == '="Pass"'
    assert result.training_report.all_passed
    assert result.candidates_explored == 0


def test_two_labels_split_at_midpoint():
    examples = [
        LabeledExample({"score": 35.0}, "Fail"),
        LabeledExample({"score": 45.0}, "Pass"),
    ]
    result = synthesize(examples)
    assert result.rendered == '=IF(MIN(C5)<40,"Fail","Pass")'
    assert result.training_report.all_passed


def test_grading_synthesis_matches_every_example():
    result = synthesize(rows(GRADES))
    assert result.rendered == (
        '=IF(MIN(C5:D5)<39.5,"Fail",IF(AVERAGE(C5:D5)<54.75,"Pass",'
        'IF(AVERAGE(C5:D5)<69.75,"Merit","Dist")))'
    )
    assert result.training_report.all_passed
    assert result.candidates_explored > 0
    assert result.metrics.complexity > 0


def test_synthesis_is_deterministic():
    a = synthesize(rows(GRADES))
    b = synthesize(rows(GRADES))
    assert a.rendered == b.rendered
    assert a.candidates_explored == b.candidates_explored


def test_attribute_family_used_when_no_aggregate_separates():
    # MIN, MAX, AVERAGE, and SUM each straddle the labels; only the first
    # attribute splits them cleanly
    examples = [
        LabeledExample({"exam": 10.0, "coursework": 100.0}, "X"),
        LabeledExample({"exam": 20.0, "coursework": 0.0}, "X"),
        LabeledExample({"exam": 30.0, "coursework": 5.0}, "Y"),
    ]
    result = synthesize(examples)
    assert result.rendered == '=IF(C5<25,"X","Y")'


def test_default_cells_go_left_to_right_from_c5():
    examples = [
        LabeledExample({"a": 1.0, "b": 1.0, "c": 1.0}, "lo"),
        LabeledExample({"a": 9.0, "b": 9.0, "c": 9.0}, "hi"),
    ]
    grids = example_grids(examples)
    assert grids[0][0] == Grid({"C5": 1.0, "D5": 1.0, "E5": 1.0})
    assert grids[1][1] == "hi"
    result = synthesize(examples)
    assert "C5:E5" in result.rendered


def test_custom_cell_assignment():
    examples = [
        LabeledExample({"a": 1.0, "b": 2.0}, "lo"),
        LabeledExample({"a": 9.0, "b": 8.0}, "hi"),
    ]
    config = HypothesisConfig(cell_assignment={"a": "A1", "b": "B1"})
    result = synthesize(examples, config)
    assert "A1:B1" in result.rendered


def test_non_adjacent_cells_fall_back_to_argument_lists():
    examples = [
        LabeledExample({"a": 1.0, "b": 2.0}, "lo"),
        LabeledExample({"a": 9.0, "b": 8.0}, "hi"),
    ]
    config = HypothesisConfig(cell_assignment={"a": "A1", "b": "C1"})
    result = synthesize(examples, config)
    assert "MIN(A1,C1)" in result.rendered


def test_synthesised_formula_agrees_with_training_grids():
    result = synthesize(rows(GRADES))
    for grid, label in example_grids(rows(GRADES)):
        assert evaluate(result.formula, grid) == label


def test_inconsistent_examples_rejected():
    with pytest.raises(InconsistentExamplesError):
        synthesize(rows([(40, 40, "Pass"), (40, 40, "Fail")]))


def test_duplicate_consistent_rows_are_fine():
    result = synthesize(rows([(10, 10, "Fail"), (10, 10, "Fail"), (90, 90, "Pass")]))
    assert result.training_report.all_passed


def test_empty_inputs_rejected():
    with pytest.raises(EmptyLabelError):
        synthesize([])
    with pytest.raises(EmptyLabelError):
        synthesize([LabeledExample({"x": 1.0}, "")])


def test_depth_cap_exhausts_the_space():
    # four labels need at least three rules plus the default
    config = HypothesisConfig(max_decision_depth=2)
    with pytest.raises(HypothesisSpaceExhaustedError) as info:
        synthesize(rows(GRADES), config)
    assert 0 < info.value.best_pass_rate < 100


def test_search_budget_is_enforced():
    with pytest.raises(SearchBudgetExceededError):
        synthesize(rows(GRADES), search_budget=5)


def test_minimal_depth_wins():
    # separable at depth 1, so no nested IF appears
    examples = rows([(10, 10, "Fail"), (20, 20, "Fail"), (90, 90, "Pass")])
    result = synthesize(examples)
    assert result.rendered.count("IF(") == 1


def test_mismatched_attribute_schemas_rejected():
    with pytest.raises(ValueError):
        synthesize([
            LabeledExample({"x": 1.0}, "a"),
            LabeledExample({"y": 2.0}, "b"),
        ])


def test_grading_result_generalises_like_the_reference():
    reference = parse(
        '=IF(MIN(C5:D5)<40,"Fail",IF(AVERAGE(C5:D5)>=70,"Dist",'
        'IF(AVERAGE(C5:D5)>=55,"Merit",IF(AVERAGE(C5:D5)>=40,"Pass"))))'
    )
    result = synthesize(rows(GRADES))
    domain = {"C5": range(0, 101), "D5": range(0, 101)}
    same, witness = semantic_equivalence(result.formula, reference, domain)
    assert same, f"diverges at {witness}"
