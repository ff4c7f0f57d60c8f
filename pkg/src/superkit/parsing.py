"""Textual expression grammar for ring elements.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := part ('*' part)*
    part   := INT ['/' INT]              -- rational coefficient
            | NAME ['^' ['-'] INT]       -- generator power

Whitespace is insignificant.  NAME must be a generator of the supplied
signature; an explicit exponent other than 1 on an odd generator is a parity
error, and a negative exponent needs the laurent flag.  format_expr is the
exact inverse on canonical elements: parse_expr(format_expr(p)) == p.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParityError, ParseError
from .superpoly import RingSignature, SuperPoly

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<int>\d+)"
                    r"|(?P<op>[-+*/^]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        pos = m.end()
        if m.lastgroup == "name":
            tokens.append(("name", m.group("name"), m.start("name")))
        elif m.lastgroup == "int":
            tokens.append(("int", int(m.group("int")), m.start("int")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, sig: RingSignature, text: str):
        self.sig = sig
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expr(self) -> SuperPoly:
        total = self.sig.zero()
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        while True:
            t = self.term()
            total = total + (-t if sign < 0 else t)
            kind, val, pos = self.peek()
            if kind == "end":
                return total
            if kind == "op" and val in "+-":
                self.take()
                sign = -1 if val == "-" else 1
                continue
            raise ParseError(f"expected '+' or '-', got {val!r}", pos)

    def term(self) -> SuperPoly:
        acc = self.part()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.part()
            else:
                return acc

    def part(self) -> SuperPoly:
        kind, val, pos = self.take()
        if kind == "int":
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 == "/":
                self.take()
                k3, v3, p3 = self.take()
                if k3 != "int":
                    raise ParseError("expected integer denominator", p3)
                return self.sig.scalar(Fraction(val, v3))
            return self.sig.scalar(val)
        if kind == "name":
            if not self.sig.has_gen(val):
                raise ParseError(f"unknown generator {val!r}", pos)
            k2, v2, _ = self.peek()
            if not (k2 == "op" and v2 == "^"):
                return self.sig.gen(val)
            self.take()
            neg = False
            k3, v3, p3 = self.take()
            if k3 == "op" and v3 == "-":
                neg = True
                k3, v3, p3 = self.take()
            if k3 != "int":
                raise ParseError("expected integer exponent", p3)
            e = -v3 if neg else v3
            if self.sig.parity_of(val) == 1 and e != 1:
                raise ParityError(f"odd generator {val!r} with exponent {e}")
            if e < 0 and not self.sig.is_laurent(val):
                raise ParseError(
                    f"negative power of non-laurent generator {val!r}", pos)
            return self.sig.monomial({val: e})
        raise ParseError(f"expected a coefficient or generator", pos)


def parse_expr(sig: RingSignature, text: str) -> SuperPoly:
    if not text.strip():
        raise ParseError("empty expression", 0)
    return _Parser(sig, text).expr()


def format_expr(p: SuperPoly) -> str:
    return p.to_string()
