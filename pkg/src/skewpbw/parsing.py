"""Tokenizer and expression parser shared by the presentation format and the
command-line expression inputs.

Expressions are sums of products.  A product multiplies scalar factors
(integers, parameters, parenthesized scalar expressions, with '/' and '^')
into a coefficient and keeps base-generator and variable factors in written
order, since variables do not commute with base-ring elements.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError, UndeclaredSymbol
from .scalars import ParamScalar

_SYMBOLS = ("->", ";", ",", ":", "=", "*", "^", "+", "-", "/", "(", ")")


@dataclass(frozen=True)
class Token:
    kind: str  # NAME | INT | OP | EOF
    value: str
    line: int
    col: int


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    line = 1
    col = 1
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and source[i] != "\n":
                i += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            tokens.append(Token("NAME", source[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            tokens.append(Token("INT", source[i:j], line, col))
            col += j - i
            i = j
            continue
        if source.startswith("->", i):
            tokens.append(Token("OP", "->", line, col))
            i += 2
            col += 2
            continue
        if ch in {s for s in _SYMBOLS if len(s) == 1}:
            tokens.append(Token("OP", ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("EOF", "", line, col))
    return tokens


#: one parsed product: a field coefficient and the noncommuting factors in
#: written order; each factor is (kind, index, exponent) with kind "base"
#: or "var".
Term = tuple  # tuple[ParamScalar, tuple[tuple[str, int, int], ...]]


class ExprParser:
    """Recursive-descent parser over a token window.

    ``params``, ``base_names`` and ``var_names`` give name resolution; pass
    empty sequences to restrict the accepted sub-language (for example pure
    scalar expressions).
    """

    def __init__(self, tokens: list[Token], pos: int, params, base_names, var_names):
        self.tokens = tokens
        self.pos = pos
        self.params = {name: k for k, name in enumerate(params)}
        self.base = {name: k for k, name in enumerate(base_names)}
        self.vars = {name: k for k, name in enumerate(var_names)}

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def expect(self, value: str) -> Token:
        t = self.next()
        if t.kind == "EOF" or (t.kind == "OP" and t.value != value) or (
            t.kind not in ("OP",) and t.value != value
        ):
            raise ParseError(f"expected {value!r}, found {t.value!r}", t.line, t.col)
        return t

    # -- grammar -----------------------------------------------------------

    def parse_expression(self) -> list[Term]:
        terms: list[Term] = []
        sign = 1
        t = self.peek()
        if t.kind == "OP" and t.value in "+-":
            self.next()
            sign = -1 if t.value == "-" else 1
        terms.append(self._term(sign))
        while True:
            t = self.peek()
            if t.kind == "OP" and t.value in "+-":
                self.next()
                terms.append(self._term(-1 if t.value == "-" else 1))
            else:
                return terms

    def _term(self, sign: int) -> Term:
        coeff = ParamScalar.from_int(sign)
        factors: list[tuple[str, int, int]] = []
        value, tok = self._factor()
        coeff, factors = self._accumulate(coeff, factors, value, tok)
        while True:
            t = self.peek()
            if t.kind == "OP" and t.value == "*":
                self.next()
                value, tok = self._factor()
                coeff, factors = self._accumulate(coeff, factors, value, tok)
            elif t.kind == "OP" and t.value == "/":
                self.next()
                value, tok = self._factor()
                if not isinstance(value, ParamScalar):
                    raise ParseError("divisor must be a scalar", tok.line, tok.col)
                if value.is_zero():
                    raise ParseError("division by zero scalar", tok.line, tok.col)
                coeff = coeff / value
            else:
                return (coeff, tuple(factors))

    @staticmethod
    def _accumulate(coeff, factors, value, tok):
        if isinstance(value, ParamScalar):
            return coeff * value, factors
        kind, idx, exp = value
        factors = list(factors)
        factors.append((kind, idx, exp))
        return coeff, factors

    def _factor(self):
        value, tok = self._primary()
        t = self.peek()
        if t.kind == "OP" and t.value == "^":
            self.next()
            e_tok = self.next()
            if e_tok.kind != "INT":
                raise ParseError("exponent must be a positive integer", e_tok.line, e_tok.col)
            e = int(e_tok.value)
            if e < 1:
                raise ParseError("exponent must be a positive integer", e_tok.line, e_tok.col)
            if isinstance(value, ParamScalar):
                value = value**e
            else:
                kind, idx, _ = value
                value = (kind, idx, e)
        return value, tok

    def _primary(self):
        t = self.next()
        if t.kind == "INT":
            return ParamScalar.from_int(int(t.value)), t
        if t.kind == "NAME":
            if t.value in self.params:
                return ParamScalar.parameter(t.value), t
            if t.value in self.base:
                return ("base", self.base[t.value], 1), t
            if t.value in self.vars:
                return ("var", self.vars[t.value], 1), t
            raise UndeclaredSymbol(f"undeclared symbol {t.value!r}", t.line, t.col)
        if t.kind == "OP" and t.value == "(":
            inner = self.parse_expression()
            self.expect(")")
            scalar = ParamScalar.zero()
            for coeff, factors in inner:
                if factors:
                    raise ParseError(
                        "parenthesized subexpressions must be scalar", t.line, t.col
                    )
                scalar = scalar + coeff
            return scalar, t
        if t.kind == "OP" and t.value == "-":
            value, tok = self._factor()
            if not isinstance(value, ParamScalar):
                raise ParseError("unary minus applies to scalars only", tok.line, tok.col)
            return -value, tok
        raise ParseError(f"unexpected token {t.value!r}", t.line, t.col)


def parse_scalar(text: str, params) -> ParamScalar:
    """Parse a standalone scalar expression over the given parameter names."""
    tokens = tokenize(text)
    p = ExprParser(tokens, 0, params, (), ())
    terms = p.parse_expression()
    if p.peek().kind != "EOF":
        t = p.peek()
        raise ParseError(f"unexpected trailing input {t.value!r}", t.line, t.col)
    total = ParamScalar.zero()
    for coeff, factors in terms:
        if factors:
            raise ParseError("expected a scalar expression")
        total = total + coeff
    return total
