"""Recursive-descent parser for the formula language.

Grammar, loosest binding first:

    formula    := '='? compare
    compare    := additive (('<'|'<='|'>'|'>='|'='|'<>') additive)*
    additive   := multiplic (('+'|'-') multiplic)*
    multiplic  := power (('*'|'/') power)*
    power      := unary ('^' unary)*
    unary      := '-' unary | primary
    primary    := NUMBER | STRING | TRUE | FALSE | cell (':' cell)?
                | NAME '(' compare (',' compare)* ')' | '(' compare ')'

All binary operators associate left. Unary minus binds tighter than '^'.
Input is case-insensitive; positions in errors index the original string.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ArityError, FormulaSyntaxError, UnknownFunctionError
from .formulas import (
    BinaryOp,
    BooleanLiteral,
    CellRef,
    COMPARISON_OPERATORS,
    FormulaAst,
    FunctionCall,
    make_range,
    Node,
    NumberLiteral,
    SUPPORTED_FUNCTIONS,
    TextLiteral,
    UnaryOp,
)

_TOKEN_RE = re.compile(
    r"""
      (?P<WS>\s+)
    | (?P<NUMBER>\d+(?:\.\d+)?)
    | (?P<STRING>"(?:[^"]|"")*")
    | (?P<CELL>\$?[A-Za-z]+\$?\d+)
    | (?P<NAME>[A-Za-z]+)
    | (?P<OP><=|>=|<>|[<>=+\-*/^])
    | (?P<LPAREN>\()
    | (?P<RPAREN>\))
    | (?P<COMMA>,)
    | (?P<COLON>:)
    """,
    re.VERBOSE,
)

_CELL_RE = re.compile(r"^(\$?)([A-Za-z]+)(\$?)(\d+)$")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def _tokenize(source: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(source):
        match = _TOKEN_RE.match(source, pos)
        if match is None:
            ch = source[pos]
            if ch == '"':
                raise FormulaSyntaxError("unterminated text literal", pos)
            raise FormulaSyntaxError(f"unexpected character {ch!r}", pos)
        kind = match.lastgroup
        if kind != "WS":
            tokens.append(Token(kind, match.group(), pos))
        pos = match.end()
    tokens.append(Token("EOF", "", len(source)))
    return tokens


def parse(source: str) -> FormulaAst:
    """Parse formula text (leading '=' optional) into a FormulaAst."""
    if not source or not source.strip():
        raise FormulaSyntaxError("empty formula", 0)
    tokens = _tokenize(source)
    parser = _Parser(tokens)
    if parser.peek().kind == "OP" and parser.peek().text == "=":
        parser.advance()
    root = parser.compare()
    tail = parser.peek()
    if tail.kind != "EOF":
        raise FormulaSyntaxError(
            f"expected end of formula, found {tail.text!r}", tail.pos
        )
    return FormulaAst(root)


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.index = 0

    def peek(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        if token.kind != "EOF":
            self.index += 1
        return token

    def expect(self, kind: str, what: str) -> Token:
        token = self.peek()
        if token.kind != kind:
            found = repr(token.text) if token.kind != "EOF" else "end of formula"
            raise FormulaSyntaxError(f"expected {what}, found {found}", token.pos)
        return self.advance()

    # precedence ladder -------------------------------------------------

    def compare(self) -> Node:
        node = self.additive()
        while self.peek().kind == "OP" and self.peek().text in COMPARISON_OPERATORS:
            op = self.advance().text
            node = BinaryOp(op, node, self.additive())
        return node

    def additive(self) -> Node:
        node = self.multiplicative()
        while self.peek().kind == "OP" and self.peek().text in ("+", "-"):
            op = self.advance().text
            node = BinaryOp(op, node, self.multiplicative())
        return node

    def multiplicative(self) -> Node:
        node = self.power()
        while self.peek().kind == "OP" and self.peek().text in ("*", "/"):
            op = self.advance().text
            node = BinaryOp(op, node, self.power())
        return node

    def power(self) -> Node:
        node = self.unary()
        while self.peek().kind == "OP" and self.peek().text == "^":
            self.advance()
            node = BinaryOp("^", node, self.unary())
        return node

    def unary(self) -> Node:
        token = self.peek()
        if token.kind == "OP" and token.text == "-":
            self.advance()
            return UnaryOp(self.unary())
        return self.primary()

    def primary(self) -> Node:
        token = self.peek()
        if token.kind == "NUMBER":
            self.advance()
            return NumberLiteral(float(token.text))
        if token.kind == "STRING":
            self.advance()
            return TextLiteral(token.text[1:-1].replace('""', '"'))
        if token.kind == "CELL":
            self.advance()
            start = self.cell_ref(token)
            if self.peek().kind == "COLON":
                self.advance()
                end_token = self.expect("CELL", "a cell reference after ':'")
                return make_range(start, self.cell_ref(end_token))
            return start
        if token.kind == "NAME":
            return self.name(token)
        if token.kind == "LPAREN":
            self.advance()
            node = self.compare()
            self.expect("RPAREN", "')'")
            return node
        found = repr(token.text) if token.kind != "EOF" else "end of formula"
        raise FormulaSyntaxError(
            f"expected a number, text, cell, function, or '(', found {found}",
            token.pos,
        )

    def name(self, token: Token) -> Node:
        upper = token.text.upper()
        self.advance()
        if self.peek().kind == "LPAREN":
            return self.function_call(upper, token.pos)
        if upper == "TRUE":
            return BooleanLiteral(True)
        if upper == "FALSE":
            return BooleanLiteral(False)
        if upper in SUPPORTED_FUNCTIONS:
            raise FormulaSyntaxError(
                f"expected '(' after function name {upper}", self.peek().pos
            )
        raise UnknownFunctionError(upper, token.pos)

    def function_call(self, name: str, pos: int) -> Node:
        if name not in SUPPORTED_FUNCTIONS:
            raise UnknownFunctionError(name, pos)
        self.advance()  # LPAREN
        args: list[Node] = []
        if self.peek().kind != "RPAREN":
            args.append(self.compare())
            while self.peek().kind == "COMMA":
                self.advance()
                args.append(self.compare())
        self.expect("RPAREN", "')' or ','")
        low, high = SUPPORTED_FUNCTIONS[name]
        if len(args) < low or (high is not None and len(args) > high):
            if high == low:
                wanted = f"exactly {low}"
            elif high is None:
                wanted = f"at least {low}"
            else:
                wanted = f"between {low} and {high}"
            raise ArityError(
                f"{name} takes {wanted} argument(s), got {len(args)}"
            )
        return FunctionCall(name, tuple(args))

    def cell_ref(self, token: Token) -> CellRef:
        match = _CELL_RE.match(token.text)
        assert match is not None
        col_mark, letters, row_mark, digits = match.groups()
        row = int(digits)
        if row == 0:
            raise FormulaSyntaxError("cell row must be at least 1", token.pos)
        return CellRef(letters.upper(), row, bool(col_mark), bool(row_mark))
