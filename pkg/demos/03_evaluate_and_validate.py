"""Running formulas against grids, and checking them against examples.

The evaluator is strict: no coercion between numbers, text, and booleans,
and problems come back as error values with a kind, the way a spreadsheet
shows #DIV/0!. That strictness is what makes example checking and
exhaustive equivalence trustworthy. Run me with:
python demos/03_evaluate_and_validate.py
"""

from sheetsmith import (
    evaluate,
    Grid,
    parse,
    semantic_equivalence,
    validate_examples,
)

GRADING = (
    '=IF(MIN(C5:D5)<40,"Fail",IF(AVERAGE(C5:D5)>=70,"Dist",'
    'IF(AVERAGE(C5:D5)>=55,"Merit",IF(AVERAGE(C5:D5)>=40,"Pass"))))'
)

ast = parse(GRADING)
for exam, coursework in [(35, 80), (45, 50), (50, 60), (70, 80)]:
    grid = Grid({"C5": exam, "D5": coursework})
    print(f"exam={exam:3} coursework={coursework:3} -> {evaluate(ast, grid)}")
print()

# Errors are values, not exceptions, and they carry a kind.
for text in ["=1/0", "=Z99+1", '="5"+1', "=IF(TRUE,1,Z99)"]:
    print(f"{text:18} -> {evaluate(parse(text), Grid({}))}")
print()

# Validation replays labelled examples through a formula and reports
# pass counts without stopping at the first failure.
examples = [
    (Grid({"C5": 35, "D5": 80}), "Fail"),
    (Grid({"C5": 50, "D5": 60}), "Merit"),
    (Grid({"C5": 70, "D5": 80}), "Dist"),
    (Grid({"C5": 70, "D5": 80}), "Merit"),  # wrong on purpose
]
report = validate_examples(ast, examples)
print(f"validation: {report.passes}/{report.total} examples pass")
print()

# Equivalence checking enumerates every grid over a finite domain. The two
# formulas below express the same pass rule two ways; the third differs at
# exactly one average and the checker hands back a witness grid.
a = parse('=IF(AVERAGE(C5:D5)>=40,"Pass","Fail")')
b = parse('=IF(AVERAGE(C5:D5)<40,"Fail","Pass")')
domain = {"C5": range(0, 101), "D5": range(0, 101)}
same, _ = semantic_equivalence(a, b, domain)
print(f"reordered branches equivalent over {101 * 101} grids: {same}")

c = parse('=IF(AVERAGE(C5:D5)>=41,"Pass","Fail")')
same, witness = semantic_equivalence(a, c, domain)
print(f"shifted threshold equivalent: {same}, first witness: {witness}")
