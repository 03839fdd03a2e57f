"""
Recursive-descent evaluator for matrix entries.

Grammar (``^`` binds tighter than unary minus, so ``-b^2 == -(b^2)``)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/')? unary)*      # juxtaposition multiplies
    unary  := ('+' | '-') unary | power
    power  := atom ('^' unary)?                # integer exponents only
    atom   := NUMBER | NAME | '(' expr ')'

Names are looked up in a bindings mapping; values are complex.
"""

import re

from .errors import ParseError, UnboundParameter

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
    r")"
)


def tokenize(text):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[bad]!r}", offset=bad)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, bindings, declared):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.bindings = bindings
        self.declared = declared

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, text, pos = self.take()
        if text != value or kind == "end":
            raise ParseError(f"expected {value!r}", offset=pos)

    def parse(self):
        value = self.expr()
        kind, text, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {text!r}", offset=pos)
        return value

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _starts_atom(self, tok):
        kind, text, _ = tok
        return kind in ("num", "name") or (kind == "op" and text == "(")

    def term(self):
        value = self.unary()
        while True:
            kind, text, pos = self.peek()
            if kind == "op" and text in ("*", "/"):
                self.take()
                rhs = self.unary()
                if text == "*":
                    value = value * rhs
                else:
                    if rhs == 0:
                        raise ParseError("division by zero", offset=pos)
                    value = value / rhs
            elif self._starts_atom((kind, text, pos)):
                value = value * self.unary()
            else:
                return value

    def unary(self):
        kind, text, _ = self.peek()
        if kind == "op" and text in ("+", "-"):
            self.take()
            value = self.unary()
            return -value if text == "-" else value
        return self.power()

    def power(self):
        base = self.atom()
        kind, text, pos = self.peek()
        if kind == "op" and text == "^":
            self.take()
            exponent = self.unary()
            if exponent.imag != 0 or exponent.real != int(exponent.real):
                raise ParseError("only integer exponents are supported", offset=pos)
            n = int(exponent.real)
            if n < 0 and base == 0:
                raise ParseError("division by zero", offset=pos)
            return base**n
        return base

    def atom(self):
        kind, text, pos = self.take()
        if kind == "num":
            return complex(float(text))
        if kind == "name":
            if self.declared is not None and text not in self.declared:
                raise ParseError(f"undeclared parameter {text!r}", offset=pos)
            if text not in self.bindings:
                raise UnboundParameter(text)
            return complex(self.bindings[text])
        if kind == "op" and text == "(":
            value = self.expr()
            self.expect(")")
            return value
        if kind == "end":
            raise ParseError("unexpected end of expression", offset=pos)
        raise ParseError(f"unexpected token {text!r}", offset=pos)


def evaluate(text, bindings=None, declared=None):
    """Evaluate an arithmetic expression over bound parameters.

    >>> evaluate("-3-6 a+5*c", {"a": 1, "c": 2})
    (1+0j)
    """
    return _Parser(text, bindings or {}, declared).parse()


def names_in(text):
    """Identifiers appearing in ``text`` (in order of first appearance)."""
    seen = []
    for kind, value, _ in tokenize(text):
        if kind == "name" and value not in seen:
            seen.append(value)
    return seen
