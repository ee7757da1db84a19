"""Polynomial expressions: tokenizer, recursive-descent parser, printer.

Grammar::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' nat)?
    base   := rational | var | '(' expr ')'

Multiplication must be written out: ``x^5*y``, never ``x^5y``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .algebra import LaurentPoly
from .errors import ParseError, UnknownVariable

VARIABLE_SETS = {"xy": ("x", "y"), "zu": ("z", "u")}

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*^()])"
)


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: PolyExpr


@dataclass(frozen=True)
class BinOp:
    op: str
    left: PolyExpr
    right: PolyExpr


@dataclass(frozen=True)
class Pow:
    base: PolyExpr
    exponent: int


PolyExpr = Union[Num, Var, Neg, BinOp, Pow]


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(src: str) -> list[_Tok]:
    out = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", line, pos - line_start + 1)
        if m.lastgroup == "ws":
            for k, ch in enumerate(m.group(), start=pos):
                if ch == "\n":
                    line, line_start = line + 1, k + 1
        else:
            out.append(_Tok(m.lastgroup, m.group(), line, pos - line_start + 1))
        pos = m.end()
    out.append(_Tok("end", "", line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, src: str, names: tuple[str, str]):
        self.toks = _tokenize(src)
        self.k = 0
        self.names = names

    @property
    def tok(self) -> _Tok:
        return self.toks[self.k]

    def fail(self, msg: str):
        raise ParseError(msg, self.tok.line, self.tok.col)

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.k += 1
            return True
        return False

    def parse(self) -> PolyExpr:
        if self.tok.kind == "end":
            self.fail("empty expression")
        node = self.expr()
        if self.tok.kind != "end":
            what = "implicit multiplication is not allowed; write '*'" if self.tok.kind in ("name", "num") or self.tok.text == "(" else f"unexpected {self.tok.text!r}"
            self.fail(what)
        return node

    def expr(self) -> PolyExpr:
        node = Neg(self.term()) if self.accept("-") else self.term()
        while True:
            if self.accept("+"):
                node = BinOp("+", node, self.term())
            elif self.accept("-"):
                node = BinOp("-", node, self.term())
            else:
                return node

    def term(self) -> PolyExpr:
        node = self.factor()
        while self.accept("*"):
            node = BinOp("*", node, self.factor())
        return node

    def factor(self) -> PolyExpr:
        node = self.base()
        if self.accept("^"):
            tok = self.tok
            if tok.kind != "num" or "/" in tok.text:
                self.fail("exponent must be a nonnegative integer")
            self.k += 1
            node = Pow(node, int(tok.text))
        return node

    def base(self) -> PolyExpr:
        tok = self.tok
        if tok.kind == "num":
            self.k += 1
            value = Fraction(tok.text)
            return Num(value)
        if tok.kind == "name":
            if tok.text not in self.names:
                raise UnknownVariable(f"unknown variable {tok.text!r}; expected one of {', '.join(self.names)}", tok.line, tok.col)
            self.k += 1
            return Var(tok.text)
        if self.accept("("):
            node = self.expr()
            if not self.accept(")"):
                self.fail("expected ')'")
            return node
        self.fail("expected a number, a variable or '('" if tok.kind != "end" else "unexpected end of input")


def parse_poly(src: str, vars: str = "xy") -> PolyExpr:
    """Parse ``src`` over the variable set ``"xy"`` or ``"zu"``."""
    if vars not in VARIABLE_SETS:
        raise ValueError(f"variable set must be one of {sorted(VARIABLE_SETS)}")
    return _Parser(src, VARIABLE_SETS[vars]).parse()


def evaluate(node: PolyExpr, vars: str = "xy") -> LaurentPoly:
    names = VARIABLE_SETS[vars]
    if isinstance(node, Num):
        return LaurentPoly.constant(node.value)
    if isinstance(node, Var):
        return LaurentPoly.monomial(1, 0) if node.name == names[0] else LaurentPoly.monomial(0, 1)
    if isinstance(node, Neg):
        return -evaluate(node.operand, vars)
    if isinstance(node, Pow):
        return evaluate(node.base, vars) ** node.exponent
    left, right = evaluate(node.left, vars), evaluate(node.right, vars)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    return left * right


def to_poly(src: str, vars: str = "xy") -> LaurentPoly:
    return evaluate(parse_poly(src, vars), vars)


_PREC = {"+": 1, "-": 1, "*": 2}


def print_expr(node: PolyExpr) -> str:
    """Render an AST in the input syntax, parenthesizing only where needed."""
    return _print(node, 0)


def _print(node: PolyExpr, outer: int) -> str:
    if isinstance(node, Num):
        v = node.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Pow):
        base = _print(node.base, 0)
        if not isinstance(node.base, (Num, Var)) or base.startswith("-"):
            base = f"({base})"
        return f"{base}^{node.exponent}"
    if isinstance(node, Neg):
        text = "-" + _print(node.operand, 2)
        return f"({text})" if outer > 0 else text
    prec = _PREC[node.op]
    # left-associative: the right operand of '-' or '*' needs a strictly higher level
    text = f"{_print(node.left, prec)} {node.op} {_print(node.right, prec + 1)}"
    return f"({text})" if prec < outer else text
