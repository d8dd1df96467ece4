"""Minimal analytic-expression parser for the command line.

Grammar (standard precedence, ^ binds tighter than unary minus, binary
operators of equal precedence associate left):

    expr   := term  (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | power
    power  := atom ('^' INT)*          INT a nonnegative integer literal
    atom   := NUMBER | 'i' | 'x' | FUNC '(' expr ')' | '(' expr ')'
    FUNC   := exp | sin | cos | sinh | cosh

Complex literals: ``2``, ``3.5i``, ``1+2i`` (the last is an ordinary
addition; no whitespace inside a single literal token).  Functions are
entire, so any parsed expression without division is analytic everywhere;
the caller owns analyticity of rational expressions on the region it
needs, and a pole at an evaluation point surfaces as EvaluationFailure.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Union

from .errors import EvaluationFailure, ParseError

__all__ = [
    "ExpressionAst",
    "parse_expression",
    "parse_complex_literal",
    "Const",
    "Var",
    "Neg",
    "BinOp",
    "Pow",
    "Func",
]

_FUNCS = {
    "exp": cmath.exp,
    "sin": cmath.sin,
    "cos": cmath.cos,
    "sinh": cmath.sinh,
    "cosh": cmath.cosh,
}


@dataclass(frozen=True)
class Const:
    value: complex

    def eval(self, x: complex) -> complex:
        return self.value

    def uses_var(self) -> bool:
        return False


@dataclass(frozen=True)
class Var:
    def eval(self, x: complex) -> complex:
        return x

    def uses_var(self) -> bool:
        return True


@dataclass(frozen=True)
class Neg:
    child: "ExpressionAst"

    def eval(self, x: complex) -> complex:
        return -self.child.eval(x)

    def uses_var(self) -> bool:
        return self.child.uses_var()


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "ExpressionAst"
    right: "ExpressionAst"

    def eval(self, x: complex) -> complex:
        a = self.left.eval(x)
        b = self.right.eval(x)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        if b == 0:
            raise EvaluationFailure(f"division by zero at x = {x}")
        return a / b

    def uses_var(self) -> bool:
        return self.left.uses_var() or self.right.uses_var()


@dataclass(frozen=True)
class Pow:
    base: "ExpressionAst"
    exponent: int

    def __post_init__(self):
        if self.exponent < 0:
            raise ValueError("integer power must be nonnegative")

    def eval(self, x: complex) -> complex:
        return self.base.eval(x) ** self.exponent

    def uses_var(self) -> bool:
        return self.base.uses_var()


@dataclass(frozen=True)
class Func:
    name: str
    arg: "ExpressionAst"

    def eval(self, x: complex) -> complex:
        v = _FUNCS[self.name](self.arg.eval(x))
        if not (abs(v.real) < 1e308 and abs(v.imag) < 1e308):
            raise EvaluationFailure(f"{self.name} overflow at x = {x}")
        return v

    def uses_var(self) -> bool:
        return self.arg.uses_var()


ExpressionAst = Union[Const, Var, Neg, BinOp, Pow, Func]


# ---------------------------------------------------------------------------
# tokenizer


@dataclass(frozen=True)
class _Tok:
    kind: str  # num | ident | op | lparen | rparen | end
    text: str
    pos: int
    value: complex = 0j


def _tokenize(src: str) -> list[_Tok]:
    toks = []
    i = 0
    n = len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and src[i + 1].isdigit()):
            j = i
            while j < n and (src[j].isdigit() or src[j] == "."):
                j += 1
            if j < n and src[j] in "eE":
                k = j + 1
                if k < n and src[k] in "+-":
                    k += 1
                if k < n and src[k].isdigit():
                    j = k
                    while j < n and src[j].isdigit():
                        j += 1
            text = src[i:j]
            try:
                val = float(text)
            except ValueError:
                raise ParseError(i, {"number"}, f"bad numeric literal {text!r} at offset {i}")
            if j < n and src[j] == "i":
                j += 1
                toks.append(_Tok("num", src[i:j], i, complex(0.0, val)))
            else:
                toks.append(_Tok("num", text, i, complex(val, 0.0)))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and src[j].isalnum():
                j += 1
            toks.append(_Tok("ident", src[i:j], i))
            i = j
            continue
        if ch in "+-*/^":
            toks.append(_Tok("op", ch, i))
            i += 1
            continue
        if ch == "(":
            toks.append(_Tok("lparen", ch, i))
            i += 1
            continue
        if ch == ")":
            toks.append(_Tok("rparen", ch, i))
            i += 1
            continue
        raise ParseError(i, {"number", "identifier", "operator", "parenthesis"},
                         f"unexpected character {ch!r} at offset {i}")
    toks.append(_Tok("end", "", n))
    return toks


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, expected) -> "NoReturn":
        t = self.peek()
        raise ParseError(t.pos, expected)

    def parse(self) -> ExpressionAst:
        node = self.expr()
        if self.peek().kind != "end":
            self.fail({"operator", "end of input"})
        return node

    def expr(self) -> ExpressionAst:
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> ExpressionAst:
        node = self.factor()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.advance().text
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> ExpressionAst:
        if self.peek().kind == "op" and self.peek().text == "-":
            self.advance()
            return Neg(self.factor())
        return self.power()

    def power(self) -> ExpressionAst:
        node = self.atom()
        while self.peek().kind == "op" and self.peek().text == "^":
            self.advance()
            t = self.peek()
            if t.kind != "num" or t.value.imag != 0 \
                    or t.value.real != int(t.value.real) or t.value.real < 0:
                self.fail({"nonnegative integer exponent"})
            self.advance()
            node = Pow(node, int(t.value.real))
        return node

    def atom(self) -> ExpressionAst:
        t = self.peek()
        if t.kind == "num":
            self.advance()
            return Const(t.value)
        if t.kind == "ident":
            if t.text == "x":
                self.advance()
                return Var()
            if t.text == "i":
                self.advance()
                return Const(1j)
            if t.text in _FUNCS:
                self.advance()
                if self.peek().kind != "lparen":
                    self.fail({"'('"})
                self.advance()
                arg = self.expr()
                if self.peek().kind != "rparen":
                    self.fail({"')'"})
                self.advance()
                return Func(t.text, arg)
            raise ParseError(t.pos, {"x", "i"} | set(_FUNCS),
                             f"unknown identifier {t.text!r} at offset {t.pos}")
        if t.kind == "lparen":
            self.advance()
            node = self.expr()
            if self.peek().kind != "rparen":
                self.fail({"')'"})
            self.advance()
            return node
        self.fail({"number", "identifier", "'('"})


def parse_expression(src: str) -> ExpressionAst:
    """Parse an analytic expression in the variable x."""
    if not src or not src.strip():
        raise ParseError(0, {"expression"}, "empty expression")
    return _Parser(src).parse()


def parse_complex_literal(src: str) -> complex:
    """Parse a constant complex value like ``2``, ``3.5i`` or ``1.5-0.5i``."""
    ast = parse_expression(src)
    if ast.uses_var():
        raise ParseError(0, {"constant"},
                         f"expected a constant, got an expression in x: {src!r}")
    return ast.eval(0j)
