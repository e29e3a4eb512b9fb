"""Parser for the Laurent polynomial expression grammar.

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' integer)?
    base   := integer | variable | parameter | '(' expr ')'

Variables are ``x,y,z,w`` (rank <= 4) or ``x1..xn``; parameters are
``a1..ar`` (plain ``a`` is accepted when r = 1).  Implicit multiplication
is not allowed.  Rational sub-expressions are accepted only when, after
full expansion, every denominator is a single monomial; parsing then
yields the expanded canonical Laurent polynomial.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .laurent import LaurentError, LaurentPolynomial, ParamPoly


class ExpressionError(LaurentError):
    """Syntax or semantic error in a polynomial expression."""


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]\w*)|(\^|\*|/|\+|-|\(|\)))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ExpressionError(f"unexpected character at position {pos}: {text[pos:]!r}")
            break
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1))))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2)))
        else:
            tokens.append(("op", m.group(3)))
        pos = m.end()
    tokens.append(("end", None))
    return tokens


@dataclass
class _Rat:
    """Rational function num/den with den kept a monomial whenever possible."""

    num: LaurentPolynomial
    den: LaurentPolynomial

    def _simplify(self) -> "_Rat":
        if len(self.den.terms) == 1:
            q = self.num * (self.den ** -1)
            return _Rat(q, LaurentPolynomial.one(q.rank, q.param_rank))
        return self

    def __add__(self, other: "_Rat") -> "_Rat":
        if self.den == other.den:
            return _Rat(self.num + other.num, self.den)._simplify()
        return _Rat(
            self.num * other.den + other.num * self.den, self.den * other.den
        )._simplify()

    def __neg__(self) -> "_Rat":
        return _Rat(-self.num, self.den)

    def __sub__(self, other: "_Rat") -> "_Rat":
        return self + (-other)

    def __mul__(self, other: "_Rat") -> "_Rat":
        return _Rat(self.num * other.num, self.den * other.den)._simplify()

    def __truediv__(self, other: "_Rat") -> "_Rat":
        if other.num.is_zero:
            raise ExpressionError("division by zero")
        return _Rat(self.num * other.den, self.den * other.num)._simplify()

    def __pow__(self, e: int) -> "_Rat":
        if e >= 0:
            return _Rat(self.num ** e, self.den ** e)._simplify()
        if self.num.is_zero:
            raise ExpressionError("division by zero")
        return _Rat(self.den ** -e, self.num ** -e)._simplify()


class _Parser:
    def __init__(self, text: str, rank: int, param_rank: int):
        self.text = text
        self.rank = rank
        self.param_rank = param_rank
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, value = self.advance()
        if kind != "op" or value != op:
            raise ExpressionError(f"expected {op!r} in {self.text!r}")

    def parse(self) -> LaurentPolynomial:
        value = self.expr()
        kind, _ = self.peek()
        if kind != "end":
            raise ExpressionError(f"trailing input in {self.text!r}")
        value = value._simplify()
        if len(value.den.terms) != 1:
            raise ExpressionError(
                "denominator does not expand to a single monomial: "
                f"{value.den.render()}"
            )
        return value.num

    def expr(self) -> _Rat:
        kind, value = self.peek()
        negate = False
        if kind == "op" and value in ("-", "+"):
            self.advance()
            negate = value == "-"
        acc = self.term()
        if negate:
            acc = -acc
        while True:
            kind, value = self.peek()
            if kind == "op" and value in ("+", "-"):
                self.advance()
                rhs = self.term()
                acc = acc + rhs if value == "+" else acc - rhs
            else:
                return acc

    def term(self) -> _Rat:
        acc = self.factor()
        while True:
            kind, value = self.peek()
            if kind == "op" and value in ("*", "/"):
                self.advance()
                rhs = self.factor()
                acc = acc * rhs if value == "*" else acc / rhs
            else:
                return acc

    def factor(self) -> _Rat:
        base = self.base()
        kind, value = self.peek()
        if kind == "op" and value == "^":
            self.advance()
            sign = 1
            kind, value = self.peek()
            if kind == "op" and value == "-":
                self.advance()
                sign = -1
            kind, value = self.advance()
            if kind != "int":
                raise ExpressionError(f"expected integer exponent in {self.text!r}")
            return base ** (sign * value)
        return base

    def base(self) -> _Rat:
        kind, value = self.advance()
        one = LaurentPolynomial.one(self.rank, self.param_rank)
        if kind == "int":
            return _Rat(LaurentPolynomial.constant(value, self.rank, self.param_rank), one)
        if kind == "name":
            return _Rat(self.named(value), one)
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ExpressionError(f"unexpected token {value!r} in {self.text!r}")

    def named(self, name: str) -> LaurentPolynomial:
        if name in ("x", "y", "z", "w") and self.rank <= 4:
            index = "xyzw".index(name)
            if index >= self.rank:
                raise ExpressionError(
                    f"variable {name!r} needs rank > {index}, declared rank is {self.rank}"
                )
            return LaurentPolynomial.variable(index, self.rank, self.param_rank)
        m = re.fullmatch(r"x(\d+)", name)
        if m:
            index = int(m.group(1)) - 1
            if not 0 <= index < self.rank:
                raise ExpressionError(f"variable {name!r} out of range for rank {self.rank}")
            return LaurentPolynomial.variable(index, self.rank, self.param_rank)
        if name == "a" and self.param_rank == 1:
            name = "a1"
        m = re.fullmatch(r"a(\d+)", name)
        if m:
            index = int(m.group(1)) - 1
            if not 0 <= index < self.param_rank:
                raise ExpressionError(
                    f"parameter {name!r} out of range for parameter rank {self.param_rank}"
                )
            coeff = ParamPoly.parameter(self.param_rank, index)
            return LaurentPolynomial.from_terms(
                self.rank, self.param_rank, {(0,) * self.rank: coeff}
            )
        raise ExpressionError(f"undeclared variable or parameter {name!r}")


def parse(text: str, rank: int, param_rank: int = 0) -> LaurentPolynomial:
    """Parse an expression into canonical form at the given ranks."""
    return _Parser(text, rank, param_rank).parse()
