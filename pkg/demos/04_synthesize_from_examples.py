"""Writing the formula from the examples instead of the other way round.

People are much better at saying "these marks are a Fail, those are a
Merit" than at nesting four IFs correctly. The synthesizer searches decision
lists of threshold tests over row aggregates, finds the shortest one that
reproduces every example, and compiles it to an ordinary formula you can
audit. Run me with: python demos/04_synthesize_from_examples.py
"""

from sheetsmith import (
    evaluate,
    example_grids,
    Grid,
    LabeledExample,
    metrics_report,
    parse,
    semantic_equivalence,
    synthesize,
)

ROWS = [
    (20, 30, "Fail"), (39, 80, "Fail"), (80, 39, "Fail"),
    (40, 40, "Pass"), (54, 55, "Pass"), (40, 58, "Pass"),
    (40, 70, "Merit"), (69, 70, "Merit"), (55, 57, "Merit"),
    (70, 70, "Dist"), (41, 99, "Dist"), (100, 100, "Dist"),
]
examples = [
    LabeledExample({"exam": float(e), "coursework": float(c)}, label)
    for e, c, label in ROWS
]

print(f"training on {len(examples)} marked rows...")
result = synthesize(examples)
print(f"found after {result.candidates_explored} candidate placements:")
print(" ", result.rendered)
report = result.training_report
print(f"training: {report.passes}/{report.total} pass")
print()

# The thresholds land between the examples (39.5, 54.75, 69.75) rather than
# on the round numbers a human would pick, but over whole-number marks the
# behaviour is identical to the hand-written grading formula.
HAND_WRITTEN = (
    '=IF(MIN(C5:D5)<40,"Fail",IF(AVERAGE(C5:D5)>=70,"Dist",'
    'IF(AVERAGE(C5:D5)>=55,"Merit",IF(AVERAGE(C5:D5)>=40,"Pass"))))'
)
domain = {"C5": range(0, 101), "D5": range(0, 101)}
same, _ = semantic_equivalence(result.formula, parse(HAND_WRITTEN), domain)
print(f"agrees with the hand-written scheme on all {101 * 101} mark pairs: {same}")
print()

# And because the output is a plain formula, the risk metrics apply to it
# like anything else.
mine = metrics_report(result.formula)
theirs = metrics_report(parse(HAND_WRITTEN))
print(f"synthesised complexity {mine.complexity:.4f} vs hand-written "
      f"{theirs.complexity:.4f}")
print()

# Refinement is just more examples. The learnt Fail cut sits at 39.5, so a
# half-mark of 39.7 would scrape through even though the intent was "under
# 40 fails". Show the synthesizer that row and it tightens the threshold.
probe = Grid({"C5": 39.7, "D5": 50.0})
print(f"exam 39.7 under the learnt formula: {evaluate(result.formula, probe)}")
refined = synthesize(examples + [LabeledExample(
    {"exam": 39.7, "coursework": 50.0}, "Fail")])
print("after that one counter-example:")
print(" ", refined.rendered)
for grid, label in example_grids(examples):
    assert evaluate(refined.formula, grid) == label
print("and every original row still passes")
