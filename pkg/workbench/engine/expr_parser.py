"""Recursive-descent parser and canonical formatter for Laurent polynomial expressions.

Grammar:

    expr     := ['+' | '-'] term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' exponent)?
    exponent := ['-'] INT
    base     := rational | VAR | '(' expr ')'
    rational := INT ('/' POSINT)?

'^' binds tighter than '*', which binds tighter than '+' and '-'. Chained
powers ("a^b^c") are rejected, as are negative powers of anything but a bare
variable, implicit multiplication and division outside a rational literal.
Parentheses nest at most MAX_NESTING deep and exponents are bounded by
MAX_EXPONENT in absolute value.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from .errors import InputRejected, ParseError
from .laurent import LaurentPolynomial

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT = re.compile(r"[0-9]+")
_SYMBOLS = "+-*/^()"
MAX_NESTING = 100
MAX_EXPONENT = 1000


class Token:
    """A lexical token with its character offset."""

    INT = "int"
    VAR = "var"
    OP = "op"
    EOF = "eof"

    __slots__ = ("typ", "text", "offset")

    def __init__(self, typ: str, text: str, offset: int):
        self.typ = typ
        self.text = text
        self.offset = offset

    def __repr__(self):
        return f"Token({self.typ}, {self.text!r}, {self.offset})"


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in _SYMBOLS:
            tokens.append(Token(Token.OP, ch, pos))
            pos += 1
            continue
        match = _INT.match(text, pos)
        if match:
            end = match.end()
            if end < len(text) and (text[end].isalpha() or text[end] == "_"):
                raise ParseError("implicit multiplication is not supported", end, text)
            tokens.append(Token(Token.INT, match.group(), pos))
            pos = end
            continue
        match = _IDENT.match(text, pos)
        if match:
            tokens.append(Token(Token.VAR, match.group(), pos))
            pos = match.end()
            continue
        raise ParseError(f"unexpected character {ch!r}", pos, text)
    tokens.append(Token(Token.EOF, "", len(text)))
    return tokens


@dataclass
class ExprSource:
    """Expression text plus the variable order that fixes exponent positions."""

    text: str
    variable_order: List[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.variable_order:
            self.variable_order = infer_variables(self.text)
        seen = set()
        for name in self.variable_order:
            if not _IDENT.fullmatch(name):
                raise InputRejected(f"invalid variable name {name!r}")
            if name in seen:
                raise InputRejected(f"variable {name!r} listed twice")
            seen.add(name)


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0
        self.depth = 0
        self.n = len(variables)
        self.index = {name: i for i, name in enumerate(variables)}

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _at(self, symbol: str) -> bool:
        return self.current.typ == Token.OP and self.current.text == symbol

    def _fail(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.current
        raise ParseError(message, tok.offset, self.text)

    def parse(self) -> LaurentPolynomial:
        if self.current.typ == Token.EOF:
            self._fail("empty expression")
        result = self.expr()
        if self.current.typ != Token.EOF:
            if self._at("/"):
                self._fail("division is only allowed inside a rational literal")
            if self._at(")"):
                self._fail("unbalanced ')'")
            self._fail(f"unexpected {self.current.text!r}")
        return result

    def expr(self) -> LaurentPolynomial:
        negate = False
        if self._at("+") or self._at("-"):
            negate = self._advance().text == "-"
        result = self.term()
        if negate:
            result = result.neg()
        while self._at("+") or self._at("-"):
            op = self._advance().text
            rhs = self.term()
            result = result.add(rhs) if op == "+" else result.sub(rhs)
        return result

    def term(self) -> LaurentPolynomial:
        result = self.factor()
        while self._at("*"):
            self._advance()
            result = result.mul(self.factor())
        if self._at("/"):
            self._fail("division is only allowed inside a rational literal")
        return result

    def factor(self) -> LaurentPolynomial:
        start = self.current
        base = self.base()
        if not self._at("^"):
            return base
        self._advance()
        exp_tok = self.current
        negative = False
        if self._at("-"):
            negative = True
            self._advance()
        if self.current.typ != Token.INT:
            self._fail("expected an integer exponent")
        k_tok = self._advance()
        k = int(k_tok.text)
        if k > MAX_EXPONENT:
            self._fail(f"exponent {k} exceeds the limit {MAX_EXPONENT}", k_tok)
        if self._at("^"):
            self._fail("chained exponentiation is ambiguous; add parentheses")
        if not negative:
            return base.pow(k)
        if start.typ != Token.VAR:
            self._fail("negative exponents are allowed only on a bare variable", exp_tok)
        (exponent, _), = base.items()
        return LaurentPolynomial.monomial(self.n, tuple(-k * e for e in exponent))

    def base(self) -> LaurentPolynomial:
        tok = self.current
        if tok.typ == Token.INT:
            self._advance()
            value = Fraction(int(tok.text))
            if self._at("/"):
                self._advance()
                den = self.current
                if den.typ != Token.INT:
                    self._fail("expected a positive integer denominator")
                if int(den.text) == 0:
                    self._fail("zero denominator", den)
                self._advance()
                value /= int(den.text)
            return LaurentPolynomial.constant(self.n, value)
        if tok.typ == Token.VAR:
            if tok.text not in self.index:
                self._fail(f"unknown variable {tok.text!r}")
            self._advance()
            return LaurentPolynomial.variable(self.n, self.index[tok.text])
        if self._at("("):
            if self.depth >= MAX_NESTING:
                self._fail(f"parentheses nest deeper than {MAX_NESTING}")
            self._advance()
            self.depth += 1
            inner = self.expr()
            self.depth -= 1
            if not self._at(")"):
                self._fail("expected ')'")
            self._advance()
            return inner
        if tok.typ == Token.EOF:
            self._fail("unexpected end of expression")
        self._fail(f"unexpected {tok.text!r}")


def parse(src: ExprSource) -> LaurentPolynomial:
    """Parse ``src`` into a fully expanded polynomial over ``src.variable_order``."""
    return _Parser(src.text, src.variable_order).parse()


def parse_expression(text: str, variables: Optional[Sequence[str]] = None) -> LaurentPolynomial:
    return parse(ExprSource(text, list(variables or [])))


def _natural_key(name: str):
    return [int(part) if part.isdigit() else part for part in re.split(r"(\d+)", name)]


def infer_variables(text: str) -> List[str]:
    """Identifiers in ``text`` in natural order (x2 before x10); ["x1"] if there are none."""
    names = set()
    for tok in tokenize(text):
        if tok.typ == Token.VAR:
            names.add(tok.text)
    return sorted(names, key=_natural_key) or ["x1"]


def _format_monomial(exponent: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, exponent):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(p: LaurentPolynomial, variables: Optional[Sequence[str]] = None) -> str:
    """Canonical text for ``p``: lex-ordered terms, parse(format(p)) == p."""
    names = list(variables) if variables else [f"x{i + 1}" for i in range(p.n)]
    if p.is_zero():
        return "0"
    out = []
    for i, (exponent, coeff) in enumerate(p.items()):
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        mono = _format_monomial(exponent, names)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f"{sign} {body}")
    return " ".join(out)
