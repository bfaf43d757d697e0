"""Exact expression and matrix-literal parsing for command-line input.

Grammar (whitespace ignored between tokens)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | atom
    atom    := INT | "sqrt" "(" INT ")" | "(" expr ")"

Offsets in errors count bytes of the UTF-8 encoded input.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union

from orbistack.errors import ExprSyntaxError
from orbistack.exactmath import IntegerMatrix, QuadraticNumber


@dataclass(frozen=True)
class Int:
    value: int
    offset: int


@dataclass(frozen=True)
class Sqrt:
    radicand: int
    offset: int


@dataclass(frozen=True)
class Neg:
    operand: "Expr"
    offset: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"
    offset: int


Expr = Union[Int, Sqrt, Neg, BinOp]


class _Parser:
    def __init__(self, text: str):
        self.src = text.encode("utf-8") if isinstance(text, str) else bytes(text)
        self.pos = 0

    def error(self, message, offset=None):
        raise ExprSyntaxError(message, self.pos if offset is None else offset)

    def skip(self):
        while self.pos < len(self.src) and self.src[self.pos] in b" \t\r\n":
            self.pos += 1

    def peek(self) -> bytes:
        self.skip()
        return self.src[self.pos:self.pos + 1]

    def expect(self, tok: bytes):
        if self.peek() != tok:
            found = self.peek().decode("utf-8", "replace") or "end of input"
            self.error(f"expected {tok.decode()!r}, found {found!r}")
        self.pos += 1

    def integer(self) -> Int:
        self.skip()
        start = self.pos
        while self.pos < len(self.src) and 0x30 <= self.src[self.pos] <= 0x39:
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        if self.peek() == b".":
            self.error("decimal literals are not exact; write a fraction instead")
        return Int(int(self.src[start:self.pos]), start)

    def atom(self) -> Expr:
        c = self.peek()
        start = self.pos
        if c == b"(":
            self.pos += 1
            inner = self.expr()
            self.expect(b")")
            return inner
        if c.isdigit():
            return self.integer()
        if self.src.startswith(b"sqrt", self.pos):
            self.pos += 4
            self.expect(b"(")
            k = self.integer()
            if k.value < 1:
                self.error("sqrt needs a positive integer", k.offset)
            self.expect(b")")
            return Sqrt(k.value, start)
        if not c:
            self.error("unexpected end of input")
        self.error(f"unexpected character {c.decode('utf-8', 'replace')!r}")

    def unary(self) -> Expr:
        if self.peek() == b"-":
            start = self.pos
            self.pos += 1
            return Neg(self.unary(), start)
        return self.atom()

    def term(self) -> Expr:
        node = self.unary()
        while self.peek() in (b"*", b"/"):
            op, at = self.src[self.pos:self.pos + 1].decode(), self.pos
            self.pos += 1
            node = BinOp(op, node, self.unary(), at)
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.peek() in (b"+", b"-"):
            op, at = self.src[self.pos:self.pos + 1].decode(), self.pos
            self.pos += 1
            node = BinOp(op, node, self.term(), at)
        return node


def parse_expr(text: str) -> Expr:
    p = _Parser(text)
    node = p.expr()
    if p.peek():
        p.error("trailing input")
    return node


def evaluate(node: Expr) -> QuadraticNumber:
    if isinstance(node, Int):
        return QuadraticNumber(node.value)
    if isinstance(node, Sqrt):
        return QuadraticNumber.sqrt(node.radicand)
    if isinstance(node, Neg):
        return -evaluate(node.operand)
    left, right = evaluate(node.left), evaluate(node.right)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    return left / right


def parse_quadratic(text: str) -> QuadraticNumber:
    return evaluate(parse_expr(text))


def parse_matrix(text: str) -> IntegerMatrix:
    """Square integer matrix from a bracketed row list such as "[[2,1],[1,1]]"."""
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[:exc.pos].encode("utf-8"))
        raise ExprSyntaxError(f"malformed matrix literal: {exc.msg}", offset) from None
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ExprSyntaxError("a matrix is a nonempty list of rows", 0)
    if any(len(r) != len(rows) for r in rows):
        raise ExprSyntaxError("the matrix must be square", 0)
    if any(not isinstance(x, int) or isinstance(x, bool) for r in rows for x in r):
        raise ExprSyntaxError("matrix entries must be integers", 0)
    return IntegerMatrix(rows)
