"""How risky is this formula?

Two lenses, both computed from the parsed tree. The vocabulary lens counts
distinct and total operators and operands (a range counts as one operand,
and $C$5 is the same operand as C5) and combines them into a complexity
number whose nominal band is 0 to 2; outside that band the formula deserves
a closer look. The working-memory lens counts the concepts a reader must
hold at once (every operator use plus every distinct operand) and flags
anything past nine. Run me with: python demos/02_risk_metrics.py
"""

from sheetsmith import metrics_report, parse

FORMULAS = [
    "=A1+A2",
    "=SUM(A1:A9)",
    '=IF(C5>=40,"Pass","Fail")',
    '=IF(AND(C5>=40,D5>=40),"Pass","Fail")',
    '=IF(MIN(C5:D5)<40,"Fail",IF(AVERAGE(C5:D5)>=70,"Dist",'
    'IF(AVERAGE(C5:D5)>=55,"Merit",IF(AVERAGE(C5:D5)>=40,"Pass"))))',
]

print(f"{'formula':<62} {'cplx':>7} {'band':>5} {'concepts':>8} {'load':>5}")
for text in FORMULAS:
    report = metrics_report(parse(text))
    band = "check" if report.out_of_range_flag else "ok"
    load = "heavy" if report.miller_flag else "ok"
    shown = text if len(text) <= 60 else text[:57] + "..."
    print(
        f"{shown:<62} {report.complexity:>7.4f} {band:>5} "
        f"{report.miller_concepts:>8} {load:>5}"
    )

print()
report = metrics_report(parse(FORMULAS[-1]))
print("the grading formula, in detail:")
print(f"  distinct operators n1 = {report.counts.n1}")
print(f"  distinct operands  n2 = {report.counts.n2}")
print(f"  total operators    N1 = {report.counts.N1}")
print(f"  total operands     N2 = {report.counts.N2}")
print(f"  volume     = {report.volume:.2f}")
print(f"  difficulty = {report.difficulty:.2f}")
print(f"  effort     = {report.effort:.2f}")
print()
print("twenty concepts at once is far past the nine most people can juggle,")
print("which is exactly why formulas like this one ship with mistakes.")
