"""Parser and printer for polynomial expressions over Q(i).

Grammar (whitespace between tokens is ignored)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | atom ('^' uint)?
    atom   := uint | 'i' | 'x' | '(' expr ')'

``a/b`` literals fall out of the term rule.  Unary minus binds looser
than ``^``, so ``-x^2`` is ``-(x^2)``.  Division is allowed only by
nonzero constants.  Expressions are expanded while parsing, so the result
is always a :class:`Polynomial`.

Solutions for the verify and eval commands use ``[expr '*'] 'exp' '(' expr ')'``
or a bare ``expr``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ExponentCap, ExprSyntaxError, NonConstant, NonPolynomial
from .exactnum import GaussianRational, I
from .poly import Polynomial, X

DEFAULT_EXPONENT_CAP = 64
# Bit budget for constant powers such as ((2^64)^64)^64.
_MAX_CONSTANT_BITS = 1 << 16
# Stays below the interpreter's default int/str conversion limit.
_MAX_LITERAL_DIGITS = 4000


@dataclass(frozen=True)
class SourcePosition:
    offset: int  # byte offset into the UTF-8 encoded input
    line: int
    column: int

    def __str__(self):
        return f"line {self.line}, column {self.column}"


def _position(text: str, index: int) -> SourcePosition:
    head = text[:index]
    line = head.count("\n") + 1
    column = index - (head.rfind("\n") + 1) + 1
    return SourcePosition(len(head.encode("utf-8", "surrogatepass")), line, column)


@dataclass(frozen=True)
class Token:
    kind: str  # 'int', 'name', 'op', 'end'
    text: str
    index: int


_TOKEN_RE = re.compile(r"\s*(?:(?P<int>[0-9]+)|(?P<name>[A-Za-z_]+)|(?P<op>[-+*/^()]))")
_TRAILING_WS = re.compile(r"\s*\Z")


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while not _TRAILING_WS.match(text, pos):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            bad = pos
            while bad < len(text) and text[bad].isspace():
                bad += 1
            raise ExprSyntaxError(f"unexpected character {text[bad]!r}", _position(text, bad))
        kind = m.lastgroup
        if kind == "int" and len(m.group(kind)) > _MAX_LITERAL_DIGITS:
            raise ExprSyntaxError("integer literal too long", _position(text, m.start(kind)))
        tokens.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, tokens, exponent_cap):
        self.text = text
        self.tokens = tokens
        self.i = 0
        self.cap = exponent_cap

    def pos(self, tok=None):
        tok = tok or self.tokens[self.i]
        return _position(self.text, tok.index)

    @property
    def tok(self):
        return self.tokens[self.i]

    def accept(self, text):
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect_end(self):
        if self.tok.kind != "end":
            raise ExprSyntaxError(f"unexpected {self.tok.text!r}", self.pos())

    def expr(self):
        value = self.term()
        while True:
            if self.accept("+"):
                value = value + self.term()
            elif self.accept("-"):
                value = value - self.term()
            else:
                return value

    def term(self):
        value = self.factor()
        while True:
            if self.accept("*"):
                value = value * self.factor()
            elif self.tok.kind == "op" and self.tok.text == "/":
                slash = self.tok
                self.i += 1
                divisor_tok = self.tok
                divisor = self.factor()
                if not divisor.is_constant():
                    raise NonPolynomial("division by an expression containing x", self.pos(divisor_tok))
                if not divisor:
                    raise ExprSyntaxError("division by zero", self.pos(slash))
                value = value / divisor
            else:
                return value

    def factor(self):
        if self.accept("-"):
            return -self.factor()
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.i += 1
            tok = self.tok
            if tok.kind != "int":
                if tok.kind == "op" and tok.text in "-(":
                    raise NonPolynomial("exponent must be a nonnegative integer literal", self.pos(tok))
                raise ExprSyntaxError("expected an integer exponent", self.pos(tok))
            n = int(tok.text)
            if n > self.cap:
                raise ExponentCap(f"exponent {n} exceeds cap {self.cap}", self.pos(tok))
            self._check_growth(base, n, tok)
            self.i += 1
            if self.tok.kind == "op" and self.tok.text == "^":
                raise ExprSyntaxError("chained '^' needs parentheses", self.pos())
            return base ** n
        return base

    def _check_growth(self, base, n, tok):
        if base.degree is not None and base.degree * n > self.cap:
            raise ExponentCap(f"power has degree {base.degree * n} above cap {self.cap}", self.pos(tok))
        bits = max((max(abs(c.re.numerator), c.re.denominator, abs(c.im.numerator), c.im.denominator).bit_length()
                    for c in base.coeffs), default=0)
        if bits * n > _MAX_CONSTANT_BITS:
            raise ExponentCap("power too large to expand", self.pos(tok))

    def atom(self):
        tok = self.tok
        if tok.kind == "int":
            self.i += 1
            return Polynomial.constant(int(tok.text))
        if tok.kind == "name":
            if tok.text == "x":
                self.i += 1
                return X
            if tok.text == "i":
                self.i += 1
                return Polynomial.constant(I)
            raise ExprSyntaxError(f"unknown name {tok.text!r}", self.pos())
        if self.accept("("):
            value = self.expr()
            if not self.accept(")"):
                raise ExprSyntaxError("expected ')'", self.pos())
            return value
        if tok.kind == "end":
            raise ExprSyntaxError("unexpected end of input", self.pos())
        raise ExprSyntaxError(f"unexpected {tok.text!r}", self.pos())


def _parse_tokens(text, tokens, exponent_cap):
    p = _Parser(text, tokens, exponent_cap)
    value = p.expr()
    p.expect_end()
    return value


def parse_polynomial(text: str, exponent_cap: int = DEFAULT_EXPONENT_CAP) -> Polynomial:
    """Parse ``text`` into an expanded polynomial in x."""
    return _parse_tokens(text, tokenize(text), exponent_cap)


def parse_scalar(text: str, exponent_cap: int = DEFAULT_EXPONENT_CAP) -> GaussianRational:
    """Parse a constant expression such as ``"3/2"`` or ``"-2+i"``."""
    tokens = tokenize(text)
    for tok in tokens:
        if tok.kind == "name" and tok.text == "x":
            raise NonConstant("constant expected, found 'x'", _position(text, tok.index))
    return _parse_tokens(text, tokens, exponent_cap)[0]


def parse_solution(text: str, exponent_cap: int = DEFAULT_EXPONENT_CAP) -> tuple[Polynomial, Polynomial]:
    """Parse ``"P * exp(W)"``, ``"exp(W)"`` or ``"P"`` into ``(P, W)``."""
    tokens = tokenize(text)
    exp_at = [k for k, t in enumerate(tokens) if t.kind == "name" and t.text == "exp"]
    if not exp_at:
        return _parse_tokens(text, tokens, exponent_cap), Polynomial()
    if len(exp_at) > 1:
        raise ExprSyntaxError("at most one exp(...) factor is allowed", _position(text, tokens[exp_at[1]].index))
    k = exp_at[0]
    if tokens[k + 1].kind != "op" or tokens[k + 1].text != "(":
        raise ExprSyntaxError("expected '(' after exp", _position(text, tokens[k + 1].index))
    close = tokens[-2]
    if close.kind != "op" or close.text != ")" or len(tokens) - 2 == k + 1:
        raise ExprSyntaxError("exp(...) must close the expression", _position(text, close.index))
    inner = tokens[k + 2:-2] + [Token("end", "", close.index)]
    exponent = _parse_tokens(text, inner, exponent_cap)
    if k == 0:
        return Polynomial.constant(1), exponent
    star = tokens[k - 1]
    if star.kind != "op" or star.text != "*" or k < 2:
        raise ExprSyntaxError("expected 'P * exp(W)'", _position(text, tokens[k].index))
    prefix = tokens[:k - 1] + [Token("end", "", star.index)]
    return _parse_tokens(text, prefix, exponent_cap), exponent


# -- printing --------------------------------------------------------------

def _monomial(k):
    return "" if k == 0 else ("x" if k == 1 else f"x^{k}")


def _term(c: GaussianRational, k: int) -> tuple[bool, str]:
    """(negative, body) for the term c*x^k, body without a leading sign."""
    mono = _monomial(k)
    if c.im == 0 or c.re == 0:
        v = c.re if c.im == 0 else c.im
        negative = v < 0
        mag = abs(v)
        unit = "i" if c.im != 0 else ""
        parts = []
        if mag != 1 or (not unit and not mono):
            parts.append(str(mag))
        if unit:
            parts.append(unit)
        if mono:
            parts.append(mono)
        return negative, "*".join(parts)
    body = f"({c})"
    return False, f"{body}*{mono}" if mono else body


def format_polynomial(p: Polynomial) -> str:
    """Descending-power text that :func:`parse_polynomial` reads back exactly."""
    if not p:
        return "0"
    out = []
    for k in range(p.degree, -1, -1):
        c = p[k]
        if not c:
            continue
        negative, body = _term(c, k)
        if not out:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f"{'-' if negative else '+'} {body}")
    return " ".join(out)


format = format_polynomial
