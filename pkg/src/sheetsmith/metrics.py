"""Halstead-style size metrics and a working-memory concept count for formulas.

Counting rules:
  operators  = function-name occurrences plus binary and unary symbols
  operands   = number/text/boolean literals, cell references, and ranges;
               a range such as C5:D5 is a single operand and ':' is not
               an operator
  identity   = canonical rendered token text, so $C$5 and C5 are the same
               operand and unary '-' merges with binary '-'

Derived values:
  complexity = 2*n1 / (n2*N2)     (2 = least complex; values outside (0, 2]
                                   set out_of_range_flag instead of clamping)
  volume     = (N1+N2) * log2(n1+n2)
  difficulty = (n1/2) * (N2/n2)
  effort     = difficulty * volume
  concepts   = N1 + n2            (flagged when above MILLER_LIMIT)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateFormulaError
from .formulas import (
    BinaryOp,
    BooleanLiteral,
    CellRef,
    FormulaAst,
    FunctionCall,
    Node,
    NumberLiteral,
    number_text,
    RangeRef,
    TextLiteral,
    UnaryOp,
)

MILLER_LIMIT = 9


@dataclass(frozen=True)
class HalsteadCounts:
    n1: int  # distinct operators
    n2: int  # distinct operands
    N1: int  # total operators
    N2: int  # total operands

    def __post_init__(self):
        if min(self.n1, self.n2, self.N1, self.N2) < 0:
            raise ValueError("halstead counts cannot be negative")
        if self.n1 > self.N1 or self.n2 > self.N2:
            raise ValueError("distinct counts cannot exceed totals")


@dataclass(frozen=True)
class MetricsReport:
    counts: HalsteadCounts
    complexity: float
    out_of_range_flag: bool
    volume: float
    difficulty: float
    effort: float
    miller_concepts: int
    miller_flag: bool


def _collect(node: Node, operators: list[str], operands: list[str]) -> None:
    if isinstance(node, NumberLiteral):
        operands.append(number_text(node.value))
    elif isinstance(node, TextLiteral):
        operands.append('"' + node.value.replace('"', '""') + '"')
    elif isinstance(node, BooleanLiteral):
        operands.append("TRUE" if node.value else "FALSE")
    elif isinstance(node, CellRef):
        operands.append(node.canonical())
    elif isinstance(node, RangeRef):
        operands.append(node.canonical())
    elif isinstance(node, FunctionCall):
        operators.append(node.name)
        for arg in node.args:
            _collect(arg, operators, operands)
    elif isinstance(node, BinaryOp):
        operators.append(node.op)
        _collect(node.left, operators, operands)
        _collect(node.right, operators, operands)
    elif isinstance(node, UnaryOp):
        operators.append(node.op)
        _collect(node.operand, operators, operands)
    else:
        raise TypeError(f"not a formula node: {node!r}")


def halstead_counts(ast: FormulaAst) -> HalsteadCounts:
    """Count distinct and total operators/operands of a formula tree."""
    operators: list[str] = []
    operands: list[str] = []
    _collect(ast.root, operators, operands)
    return HalsteadCounts(
        n1=len(set(operators)),
        n2=len(set(operands)),
        N1=len(operators),
        N2=len(operands),
    )


def halstead_complexity(counts: HalsteadCounts) -> tuple[float, bool]:
    """2*n1/(n2*N2) and whether it fell outside the nominal (0, 2] range."""
    if counts.n2 * counts.N2 == 0:
        raise DegenerateFormulaError(
            "complexity undefined: formula has no operands"
        )
    value = 2 * counts.n1 / (counts.n2 * counts.N2)
    return value, value <= 0 or value > 2


def halstead_extended(counts: HalsteadCounts) -> tuple[float, float, float]:
    """(volume, difficulty, effort) from the classic Halstead definitions."""
    if counts.n2 == 0 or counts.n1 + counts.n2 < 1:
        raise DegenerateFormulaError(
            "extended metrics undefined: formula has no operands"
        )
    volume = (counts.N1 + counts.N2) * math.log2(counts.n1 + counts.n2)
    difficulty = (counts.n1 / 2) * (counts.N2 / counts.n2)
    return volume, difficulty, difficulty * volume


def miller_concepts(ast: FormulaAst) -> tuple[int, bool]:
    """N1 + n2 as a count of concepts held in mind; flag when above 9."""
    counts = halstead_counts(ast)
    concepts = counts.N1 + counts.n2
    return concepts, concepts > MILLER_LIMIT


def metrics_report(ast: FormulaAst) -> MetricsReport:
    """All metrics for one formula in a single pass."""
    counts = halstead_counts(ast)
    complexity, out_of_range = halstead_complexity(counts)
    volume, difficulty, effort = halstead_extended(counts)
    concepts = counts.N1 + counts.n2
    return MetricsReport(
        counts=counts,
        complexity=complexity,
        out_of_range_flag=out_of_range,
        volume=volume,
        difficulty=difficulty,
        effort=effort,
        miller_concepts=concepts,
        miller_flag=concepts > MILLER_LIMIT,
    )
