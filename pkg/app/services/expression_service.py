#!/usr/bin/env python
"""
app/services/expression_service.py
────────────────────────────────────────────────────────────────────────
The small expression language of the ``eval`` command and ``POST /eval``.

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "<>" | juxtaposition) unary)*
    unary   := "-" unary | atom
    atom    := INT | "[" INT ("," INT)* "]" | GEN | call | "(" expr ")"
    GEN     := ("Z" | "Q" | "Q'" | "c" | "v" | "q") (digits | "{" digits "}")
    call    := NAME "(" expr ("," expr)* ")"
    line    := expr ["@" RING]

Calls: antipode(x), coproduct(x), abelianize(x), pair(q, m), diamond(x, y),
steenrod(k, x).  ``x <> y`` is the infix spelling of diamond(x, y).

Each node carries its algebra (qsymm | nsymm | symm | scalar | tensor:<kind>),
inferred bottom-up by ``infer``.

Public API
──────────
    parse(text) -> ParsedExpression
    to_text(node_or_parsed) -> str     (canonical form; parse(to_text(e)) == e)
    infer(node) -> str
    ExpressionSyntaxError, ExpressionTypeError
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from app.algebra.core import AlgebraError, CoefficientRing

QSYMM, NSYMM, SYMM, SCALAR = "qsymm", "nsymm", "symm", "scalar"
TENSOR_PREFIX = "tensor:"

FUNCTIONS = {"antipode": 1, "coproduct": 1, "abelianize": 1, "pair": 2, "diamond": 2, "steenrod": 2}
GENERATOR_ALGEBRA = {"Z": NSYMM, "Q": NSYMM, "Q'": NSYMM, "c": SYMM, "v": SYMM, "q": SYMM}


# ───────────────────────────── errors ──────────────────────────────────────
class ExpressionSyntaxError(AlgebraError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text

    def caret(self) -> str:
        """The offending line with a caret under the position."""
        return f"{self.text}\n{' ' * self.position}^"


class ExpressionTypeError(AlgebraError):
    pass


# ───────────────────────────── AST ─────────────────────────────────────────
@dataclass(frozen=True)
class Node:
    algebra: Optional[str] = field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Int(Node):
    value: int


@dataclass(frozen=True)
class Bracket(Node):
    parts: Tuple[int, ...]


@dataclass(frozen=True)
class Gen(Node):
    letter: str
    index: int


@dataclass(frozen=True)
class Neg(Node):
    operand: Node


@dataclass(frozen=True)
class BinOp(Node):
    op: str  # "+", "-", "*", "<>"
    left: Node
    right: Node


@dataclass(frozen=True)
class Call(Node):
    name: str
    args: Tuple[Node, ...]


@dataclass(frozen=True)
class ParsedExpression:
    node: Node
    ring: Optional[str] = None

    @property
    def algebra(self) -> str:
        return self.node.algebra

    def coefficient_ring(self, default: str) -> CoefficientRing:
        return CoefficientRing.parse(self.ring or default)


# ───────────────────────────── tokenizer ───────────────────────────────────
_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<ring>@\s*(?:Fp:\d+|Zp:\d+|ZZ|QQ|Z|Q))
  | (?P<int>\d+)
  | (?P<gen>(?:Q'|Z|Q|c|v|q)(?:\{\d+\}|\d+))
  | (?P<name>[A-Za-z_]+)
  | (?P<diamond><>)
  | (?P<punct>[-+*()\[\],])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


# ───────────────────────────── parser ──────────────────────────────────────
class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def _error(self, message: str, tok: Optional[Token] = None) -> ExpressionSyntaxError:
        tok = tok or self.tok
        return ExpressionSyntaxError(message, tok.pos, self.text)

    def _advance(self) -> Token:
        tok = self.tok
        self.i += 1
        return tok

    def _expect(self, text: str) -> Token:
        if self.tok.text != text:
            found = self.tok.text or "end of input"
            raise self._error(f"expected {text!r}, found {found!r}")
        return self._advance()

    def _starts_atom(self) -> bool:
        tok = self.tok
        return tok.kind in ("int", "gen", "name") or tok.text in ("(", "[")

    def parse_line(self) -> ParsedExpression:
        node = self.expr()
        ring = None
        if self.tok.kind == "ring":
            ring = self._advance().text[1:].strip()
        if self.tok.kind != "end":
            raise self._error(f"unexpected {self.tok.text!r}")
        return ParsedExpression(node, ring)

    def expr(self) -> Node:
        node = self.term()
        while self.tok.text in ("+", "-"):
            op = self._advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while True:
            if self.tok.text == "*":
                self._advance()
                node = BinOp("*", node, self.unary())
            elif self.tok.kind == "diamond":
                self._advance()
                node = BinOp("<>", node, self.unary())
            elif self._starts_atom():
                node = BinOp("*", node, self.unary())
            else:
                return node

    def unary(self) -> Node:
        if self.tok.text == "-":
            self._advance()
            return Neg(self.unary())
        return self.atom()

    def atom(self) -> Node:
        tok = self.tok
        if tok.kind == "int":
            self._advance()
            return Int(int(tok.text))
        if tok.kind == "gen":
            self._advance()
            letter = "Q'" if tok.text.startswith("Q'") else tok.text[0]
            index = int(tok.text[len(letter):].strip("{}"))
            if index < 1:
                raise self._error("generator index must be >= 1", tok)
            return Gen(letter, index)
        if tok.text == "[":
            return self._bracket()
        if tok.text == "(":
            self._advance()
            node = self.expr()
            self._expect(")")
            return node
        if tok.kind == "name":
            return self._call()
        found = tok.text or "end of input"
        raise self._error(f"unexpected {found!r}")

    def _bracket(self) -> Node:
        self._expect("[")
        parts: List[int] = []
        if self.tok.text != "]":
            while True:
                tok = self.tok
                if tok.kind != "int":
                    raise self._error("expected a positive integer part")
                self._advance()
                if int(tok.text) < 1:
                    raise self._error("composition parts must be >= 1", tok)
                parts.append(int(tok.text))
                if self.tok.text != ",":
                    break
                self._advance()
        self._expect("]")
        return Bracket(tuple(parts))

    def _call(self) -> Node:
        tok = self._advance()
        if tok.text not in FUNCTIONS:
            raise self._error(f"unknown function {tok.text!r}", tok)
        self._expect("(")
        args = [self.expr()]
        while self.tok.text == ",":
            self._advance()
            args.append(self.expr())
        self._expect(")")
        if len(args) != FUNCTIONS[tok.text]:
            raise self._error(f"{tok.text} takes {FUNCTIONS[tok.text]} argument(s)", tok)
        if tok.text == "diamond":
            return BinOp("<>", args[0], args[1])
        return Call(tok.text, tuple(args))


def parse(text: str) -> ParsedExpression:
    """Parse and type-check one expression line."""
    parsed = _Parser(text).parse_line()
    infer(parsed.node)
    return parsed


# ───────────────────────────── type inference ──────────────────────────────
def _set(node: Node, algebra: str) -> str:
    object.__setattr__(node, "algebra", algebra)
    return algebra


def infer(node: Node) -> str:
    if isinstance(node, Int):
        return _set(node, SCALAR)
    if isinstance(node, Bracket):
        return _set(node, QSYMM)
    if isinstance(node, Gen):
        return _set(node, GENERATOR_ALGEBRA[node.letter])
    if isinstance(node, Neg):
        return _set(node, infer(node.operand))
    if isinstance(node, BinOp):
        left, right = infer(node.left), infer(node.right)
        if node.op == "<>":
            if left != NSYMM or right != NSYMM:
                raise ExpressionTypeError(f"diamond needs nsymm operands, got {left} and {right}")
            return _set(node, NSYMM)
        if left == SCALAR:
            return _set(node, right)
        if right == SCALAR:
            return _set(node, left)
        if left != right:
            raise ExpressionTypeError(f"cannot combine {left} with {right} under {node.op!r}")
        return _set(node, left)
    if isinstance(node, Call):
        kinds = [infer(a) for a in node.args]
        if node.name in ("antipode", "coproduct"):
            if kinds[0] not in (QSYMM, NSYMM, SYMM):
                raise ExpressionTypeError(f"{node.name} needs qsymm, nsymm or symm, got {kinds[0]}")
            return _set(node, kinds[0] if node.name == "antipode" else TENSOR_PREFIX + kinds[0])
        if node.name == "abelianize":
            if kinds[0] != NSYMM:
                raise ExpressionTypeError(f"abelianize needs nsymm, got {kinds[0]}")
            return _set(node, SYMM)
        if node.name == "pair":
            if kinds != [QSYMM, NSYMM]:
                raise ExpressionTypeError(f"pair needs (qsymm, nsymm), got ({kinds[0]}, {kinds[1]})")
            return _set(node, SCALAR)
        if node.name == "steenrod":
            if not isinstance(node.args[0], Int):
                raise ExpressionTypeError("steenrod takes an integer literal as first argument")
            if kinds[1] != QSYMM:
                raise ExpressionTypeError(f"steenrod acts on qsymm, got {kinds[1]}")
            return _set(node, QSYMM)
    raise ExpressionTypeError(f"cannot type {node!r}")


# ───────────────────────────── printer ─────────────────────────────────────
_PREC = {"+": 1, "-": 1, "*": 2}


def _prec(node: Node) -> int:
    if isinstance(node, BinOp) and node.op in _PREC:
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 3
    return 4


def _wrap(node: Node, minimum: int) -> str:
    text = _print(node)
    return f"({text})" if _prec(node) < minimum else text


def _print(node: Node) -> str:
    if isinstance(node, Int):
        return str(node.value)
    if isinstance(node, Bracket):
        return "[" + ",".join(str(a) for a in node.parts) + "]"
    if isinstance(node, Gen):
        return f"{node.letter}{node.index}"
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, 3)
    if isinstance(node, BinOp):
        if node.op == "<>":
            return f"diamond({_print(node.left)}, {_print(node.right)})"
        p = _PREC[node.op]
        sep = "*" if node.op == "*" else f" {node.op} "
        return _wrap(node.left, p) + sep + _wrap(node.right, p + 1)
    if isinstance(node, Call):
        return f"{node.name}(" + ", ".join(_print(a) for a in node.args) + ")"
    raise TypeError(f"not an expression node: {node!r}")


def to_text(expr: Node | ParsedExpression) -> str:
    if isinstance(expr, ParsedExpression):
        body = _print(expr.node)
        return f"{body} @{expr.ring}" if expr.ring else body
    return _print(expr)
