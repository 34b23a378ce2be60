"""Recursive-descent parser for polynomial expressions.

Grammar (whitespace ignored)::

    expr     := term (('+' | '-') term)*
    term     := factor (('*' factor) | factor)*      # juxtaposition = product
    factor   := ['-'] atom ['^' uint]
    atom     := rational | variable | '(' expr ')'
    rational := int ['/' uint] | decimal

``^`` binds to the atom only, so ``-x^2`` is ``-(x^2)``.  ``**`` is accepted
as a synonym for ``^``.  Identifiers that are not declared variables are
split greedily into declared names, so ``3x^2y`` reads as ``3*x^2*y``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import ExprSyntaxError, NonPolynomial, UnknownVariable
from .ratpoly import Poly

__all__ = ["ExprAst", "parse_ast", "parse_poly", "ast_to_poly", "evaluate_ast", "parse_point"]


@dataclass(frozen=True)
class ExprAst:
    """Parse-tree node.  ``kind`` is one of number, variable, add, sub, neg,
    mul, pow, group."""

    kind: str
    children: tuple = ()
    value: object = None


@dataclass
class _Token:
    kind: str  # num, ident, op, end
    text: str
    offset: int
    value: object = field(default=None)


def _tokenize(text: str) -> list[_Token]:
    toks = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == ".":
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            toks.append(_Token("num", text[i:j], _byte_offset(text, i), Fraction(text[i:j])))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Token("ident", text[i:j], _byte_offset(text, i)))
            i = j
            continue
        if text.startswith("**", i):
            toks.append(_Token("op", "^", _byte_offset(text, i)))
            i += 2
            continue
        if ch in "+-*/^()":
            toks.append(_Token("op", ch, _byte_offset(text, i)))
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", _byte_offset(text, i))
    toks.append(_Token("end", "", _byte_offset(text, n)))
    return toks


def _byte_offset(text: str, i: int) -> int:
    return len(text[:i].encode("utf-8"))


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.variables = tuple(variables)
        self.toks = _tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> _Token:
        return self.toks[self.pos]

    def advance(self) -> _Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, text):
        if self.tok.kind != "op" or self.tok.text != text:
            raise ExprSyntaxError(f"expected {text!r}, found {self.tok.text or 'end of input'!r}", self.tok.offset)
        return self.advance()

    def parse(self) -> ExprAst:
        if self.tok.kind == "end":
            raise ExprSyntaxError("empty expression", self.tok.offset)
        node = self.expr()
        if self.tok.kind != "end":
            raise ExprSyntaxError(f"unexpected {self.tok.text!r}", self.tok.offset)
        return node

    def expr(self) -> ExprAst:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            rhs = self.term()
            node = ExprAst("add" if op == "+" else "sub", (node, rhs))
        return node

    def _starts_atom(self) -> bool:
        t = self.tok
        return t.kind in ("num", "ident") or (t.kind == "op" and t.text == "(")

    def term(self) -> ExprAst:
        node = self.factor()
        while True:
            if self.tok.kind == "op" and self.tok.text == "*":
                self.advance()
                node = ExprAst("mul", (node, self.factor()))
            elif self._starts_atom():
                node = ExprAst("mul", (node, self.factor()))
            else:
                return node

    def factor(self) -> ExprAst:
        if self.tok.kind == "op" and self.tok.text == "-":
            self.advance()
            return ExprAst("neg", (self.factor(),))
        head = None
        if self.tok.kind == "ident":
            # "yz^2" is y * z^2: the exponent binds to the last name only
            names = self._split_ident(self.advance())
            for name in names[:-1]:
                v = ExprAst("variable", (), name)
                head = v if head is None else ExprAst("mul", (head, v))
            node = ExprAst("variable", (), names[-1])
        else:
            node = self.atom()
        node = self._power(node)
        return node if head is None else ExprAst("mul", (head, node))

    def _power(self, node: ExprAst) -> ExprAst:
        if self.tok.kind == "op" and self.tok.text == "^":
            self.advance()
            t = self.tok
            if t.kind == "op" and t.text in "-+":
                raise NonPolynomial(f"signed exponent at offset {t.offset}")
            if t.kind != "num":
                raise ExprSyntaxError("exponent must be a non-negative integer literal", t.offset)
            self.advance()
            if "." in t.text or (self.tok.kind == "op" and self.tok.text == "/"):
                raise NonPolynomial(f"fractional exponent at offset {t.offset}")
            node = ExprAst("pow", (node,), int(t.text))
        return node

    def atom(self) -> ExprAst:
        t = self.tok
        if t.kind == "num":
            self.advance()
            value = t.value
            if self.tok.kind == "op" and self.tok.text == "/":
                self.advance()
                d = self.tok
                if d.kind != "num" or "." in d.text or "." in t.text:
                    raise ExprSyntaxError("rational literal needs integer numerator and denominator", d.offset)
                if d.value == 0:
                    raise ExprSyntaxError("zero denominator", d.offset)
                self.advance()
                value = value / d.value
            return ExprAst("number", (), value)
        if t.kind == "ident":
            self.advance()
            names = self._split_ident(t)
            node = ExprAst("variable", (), names[0])
            for name in names[1:]:
                node = ExprAst("mul", (node, ExprAst("variable", (), name)))
            return node
        if t.kind == "op" and t.text == "(":
            self.advance()
            inner = self.expr()
            self.expect(")")
            return ExprAst("group", (inner,))
        if t.kind == "op" and t.text == "-":
            raise ExprSyntaxError("unexpected '-'", t.offset)
        raise ExprSyntaxError(f"unexpected {t.text or 'end of input'!r}", t.offset)

    def _split_ident(self, t: _Token) -> list[str]:
        word = t.text
        if word in self.variables:
            return [word]
        names = []
        i = 0
        ordered = sorted(self.variables, key=len, reverse=True)
        while i < len(word):
            for v in ordered:
                if word.startswith(v, i):
                    names.append(v)
                    i += len(v)
                    break
            else:
                raise UnknownVariable(f"unknown variable {word!r} at offset {t.offset}")
        return names


def parse_ast(text: str, variables: Sequence[str]) -> ExprAst:
    if not isinstance(text, str) or not text.strip():
        raise ExprSyntaxError("empty expression", 0)
    return _Parser(text, variables).parse()


def ast_to_poly(node: ExprAst, variables: Sequence[str]) -> Poly:
    ring = tuple(variables)
    k = node.kind
    if k == "number":
        return Poly.const(node.value, ring)
    if k == "variable":
        return Poly.var(node.value, ring)
    if k == "group":
        return ast_to_poly(node.children[0], ring)
    if k == "neg":
        return -ast_to_poly(node.children[0], ring)
    if k == "add":
        return ast_to_poly(node.children[0], ring) + ast_to_poly(node.children[1], ring)
    if k == "sub":
        return ast_to_poly(node.children[0], ring) - ast_to_poly(node.children[1], ring)
    if k == "mul":
        return ast_to_poly(node.children[0], ring) * ast_to_poly(node.children[1], ring)
    if k == "pow":
        return ast_to_poly(node.children[0], ring) ** node.value
    raise ValueError(f"bad node kind {k!r}")


def evaluate_ast(node: ExprAst, point: dict) -> Fraction:
    """Evaluate a parse tree directly at ``{name: value}`` without building a Poly."""
    k = node.kind
    if k == "number":
        return node.value
    if k == "variable":
        return point[node.value]
    if k == "group":
        return evaluate_ast(node.children[0], point)
    if k == "neg":
        return -evaluate_ast(node.children[0], point)
    a = evaluate_ast(node.children[0], point)
    if k == "pow":
        return a ** node.value
    b = evaluate_ast(node.children[1], point)
    if k == "add":
        return a + b
    if k == "sub":
        return a - b
    if k == "mul":
        return a * b
    raise ValueError(f"bad node kind {k!r}")


def parse_poly(text: str, variables: Sequence[str] = ("x", "y")) -> Poly:
    """Parse ``text`` into an exact :class:`Poly` over ``variables``.

    >>> parse_poly("x^3-x^2+y^2").to_string()
    'x^3-x^2+y^2'
    """
    return ast_to_poly(parse_ast(text, variables), variables)


def parse_point(text: str) -> tuple[Fraction, ...]:
    """Parse ``"1/2,0,-3"`` or ``"0.5,0"`` into exact rationals."""
    from .errors import InputError

    parts = [p.strip() for p in text.split(",")]
    if not parts or any(not p for p in parts):
        raise InputError(f"bad point {text!r}")
    try:
        return tuple(Fraction(p) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad point {text!r}: {exc}") from None
