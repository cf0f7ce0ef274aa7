"""Syntax trees for the Excel-like formula language, plus canonical rendering.

Canonical text is uppercase, contains no whitespace, and parenthesizes only
where precedence requires, so rendering the same tree twice is byte-identical.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

# name -> (min arity, max arity); None = unbounded
SUPPORTED_FUNCTIONS = {
    "IF": (2, 3),
    "AND": (1, None),
    "OR": (1, None),
    "NOT": (1, 1),
    "MIN": (1, None),
    "MAX": (1, None),
    "AVERAGE": (1, None),
    "SUM": (1, None),
}

AGGREGATE_FUNCTIONS = ("MIN", "MAX", "AVERAGE", "SUM")

COMPARISON_OPERATORS = ("<", "<=", ">", ">=", "=", "<>")


def column_index(letters: str) -> int:
    """Column letters to 1-based index: A -> 1, Z -> 26, AA -> 27."""
    index = 0
    for ch in letters:
        index = index * 26 + (ord(ch) - ord("A") + 1)
    return index


def column_letters(index: int) -> str:
    """Inverse of column_index."""
    letters = ""
    while index > 0:
        index, rem = divmod(index - 1, 26)
        letters = chr(ord("A") + rem) + letters
    return letters


@dataclass(frozen=True)
class NumberLiteral:
    value: float


@dataclass(frozen=True)
class TextLiteral:
    value: str


@dataclass(frozen=True)
class BooleanLiteral:
    value: bool


@dataclass(frozen=True)
class CellRef:
    column: str
    row: int
    column_absolute: bool = False
    row_absolute: bool = False

    def canonical(self) -> str:
        """Relative uppercase form; grid lookups and operand identity use this."""
        return f"{self.column}{self.row}"


@dataclass(frozen=True)
class RangeRef:
    start: CellRef
    end: CellRef

    def canonical(self) -> str:
        return f"{self.start.canonical()}:{self.end.canonical()}"


@dataclass(frozen=True)
class FunctionCall:
    name: str
    args: "tuple[Node, ...]"


@dataclass(frozen=True)
class BinaryOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class UnaryOp:
    operand: "Node"
    op: str = "-"


Node = Union[
    NumberLiteral,
    TextLiteral,
    BooleanLiteral,
    CellRef,
    RangeRef,
    FunctionCall,
    BinaryOp,
    UnaryOp,
]


@dataclass(frozen=True)
class FormulaAst:
    root: Node


def make_range(a: CellRef, b: CellRef) -> RangeRef:
    """Build a range normalized so start is the top-left corner.

    Columns and rows are ordered independently; absolute markers travel with
    the component they marked.
    """
    cols = sorted(
        [(column_index(a.column), a.column, a.column_absolute),
         (column_index(b.column), b.column, b.column_absolute)]
    )
    rows = sorted([(a.row, a.row_absolute), (b.row, b.row_absolute)])
    start = CellRef(cols[0][1], rows[0][0], cols[0][2], rows[0][1])
    end = CellRef(cols[1][1], rows[1][0], cols[1][2], rows[1][1])
    return RangeRef(start, end)


def cells_in_range(ref: RangeRef) -> list[str]:
    """Canonical cell names covered by a range, row-major."""
    c0 = column_index(ref.start.column)
    c1 = column_index(ref.end.column)
    out = []
    for row in range(ref.start.row, ref.end.row + 1):
        for col in range(c0, c1 + 1):
            out.append(f"{column_letters(col)}{row}")
    return out


def number_text(value: float) -> str:
    """Canonical numeric literal: no trailing .0, never exponent notation."""
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    text = repr(float(value))
    if "e" in text or "E" in text:
        text = format(value, ".17f").rstrip("0").rstrip(".")
    return text


# Binding strength, loosest first. Comparisons chain below addition; unary
# minus binds tighter than the power operator.
_COMPARE, _ADD, _MUL, _POW, _UNARY, _ATOM = 1, 2, 3, 4, 5, 6

_BINARY_PRECEDENCE = {
    "<": _COMPARE, "<=": _COMPARE, ">": _COMPARE, ">=": _COMPARE,
    "=": _COMPARE, "<>": _COMPARE,
    "+": _ADD, "-": _ADD,
    "*": _MUL, "/": _MUL,
    "^": _POW,
}


def _precedence(node: Node) -> int:
    if isinstance(node, BinaryOp):
        return _BINARY_PRECEDENCE[node.op]
    if isinstance(node, UnaryOp):
        return _UNARY
    return _ATOM


def render(ast: FormulaAst) -> str:
    """Canonical source text for a tree, leading '=' included."""
    return "=" + _render(ast.root)


def _render(node: Node) -> str:
    if isinstance(node, NumberLiteral):
        return number_text(node.value)
    if isinstance(node, TextLiteral):
        return '"' + node.value.replace('"', '""') + '"'
    if isinstance(node, BooleanLiteral):
        return "TRUE" if node.value else "FALSE"
    if isinstance(node, CellRef):
        col_mark = "$" if node.column_absolute else ""
        row_mark = "$" if node.row_absolute else ""
        return f"{col_mark}{node.column}{row_mark}{node.row}"
    if isinstance(node, RangeRef):
        return _render(node.start) + ":" + _render(node.end)
    if isinstance(node, FunctionCall):
        return node.name + "(" + ",".join(_render(a) for a in node.args) + ")"
    if isinstance(node, UnaryOp):
        return "-" + _wrap(node.operand, _UNARY, tight=False)
    if isinstance(node, BinaryOp):
        p = _BINARY_PRECEDENCE[node.op]
        # equal precedence on the right needs parens to survive reparsing,
        # since all binary operators associate left
        return _wrap(node.left, p, tight=False) + node.op + _wrap(node.right, p, tight=True)
    raise TypeError(f"not a formula node: {node!r}")


def _wrap(node: Node, parent: int, tight: bool) -> str:
    p = _precedence(node)
    if p < parent or (tight and p == parent):
        return "(" + _render(node) + ")"
    return _render(node)
