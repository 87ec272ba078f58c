"""Parser for scalar and algebra-element literals.

Grammar (whitespace insensitive)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" INT)?
    atom   := INT | NAME | symbol | "(" expr ")"
    symbol := ("E" | "H") "[" ["-"] INT ("," ["-"] INT)* "]" | "C1" | "C2" | "C3"

Names are m1..mn and the session parameters.  Symbols are only legal when
parsing an element; a scalar may multiply or divide an element, elements add
to elements, and every other mixture is rejected.
"""

from __future__ import annotations

import re
from typing import NamedTuple

from .algebra import Basis, CENTRALS, Element
from .lattice import DimensionMismatch, guard_index
from .scalars import Context, Scalar, UnknownIndeterminate


class ExprSyntaxError(ValueError):
    """Malformed expression.  ``pos`` is the byte offset of the offending token."""

    def __init__(self, message: str, pos: int, text: str = ""):
        super().__init__(f"{message} at offset {pos}")
        self.pos = pos
        self.text = text


class _Tok(NamedTuple):
    kind: str
    value: str
    pos: int


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


def tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while True:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            toks.append(_Tok("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(_Tok("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()[],":
                raise ExprSyntaxError(f"unexpected character {ch!r}", _byte_offset(text, m.start(3)), text)
            toks.append(_Tok(ch, ch, m.start(3)))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, ctx: Context, allow_symbols: bool):
        self.text = text
        self.ctx = ctx
        self.allow_symbols = allow_symbols
        self.toks = tokenize(text)
        self.i = 0

    # helpers ------------------------------------------------------------

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, message: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        return ExprSyntaxError(message, _byte_offset(self.text, tok.pos), self.text)

    def expect(self, kind: str) -> _Tok:
        t = self.peek()
        if t.kind != kind:
            found = "end of input" if t.kind == "end" else repr(t.value)
            raise self.error(f"expected {kind!r}, found {found}")
        return self.take()

    # grammar ------------------------------------------------------------

    def parse(self):
        if self.peek().kind == "end":
            raise self.error("empty expression")
        v = self.expr()
        if self.peek().kind != "end":
            raise self.error(f"unexpected {self.peek().value!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek().kind in "+-":
            op = self.take()
            rhs = self.term()
            v = self._combine(op, v, rhs)
        return v

    def term(self):
        v = self.unary()
        while self.peek().kind in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            v = self._combine(op, v, rhs)
        return v

    def unary(self):
        t = self.peek()
        if t.kind == "-":
            self.take()
            return -self.unary()
        if t.kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().kind == "^":
            op = self.take()
            if self.peek().kind != "int":
                raise self.error("exponent must be a non-negative integer literal")
            k = int(self.take().value)
            if isinstance(base, Element):
                raise self.error("cannot raise an algebra element to a power", op)
            return base**k
        return base

    def atom(self):
        t = self.peek()
        if t.kind == "int":
            self.take()
            return Scalar.of(int(t.value))
        if t.kind == "(":
            self.take()
            v = self.expr()
            self.expect(")")
            return v
        if t.kind == "name":
            if t.value in ("E", "H") and self.toks[self.i + 1].kind == "[":
                return self.symbol()
            if t.value in ("C1", "C2", "C3"):
                if not self.allow_symbols:
                    raise self.error(f"algebra symbol {t.value} in a scalar expression")
                self.take()
                return Element.basis(next(c for c in CENTRALS if c.kind == t.value))
            if t.value not in self.ctx:
                err = UnknownIndeterminate(f"{t.value} (offset {_byte_offset(self.text, t.pos)})")
                err.pos = _byte_offset(self.text, t.pos)
                raise err
            self.take()
            return Scalar.var(t.value)
        found = "end of input" if t.kind == "end" else repr(t.value)
        raise self.error(f"unexpected {found}")

    def symbol(self) -> Element:
        head = self.take()
        if not self.allow_symbols:
            raise self.error(f"algebra symbol {head.value}[...] in a scalar expression", head)
        self.expect("[")
        coords = [self._signed_int()]
        while self.peek().kind == ",":
            self.take()
            coords.append(self._signed_int())
        self.expect("]")
        if len(coords) != self.ctx.n:
            raise DimensionMismatch(
                f"{head.value}{coords} has {len(coords)} coordinates, expected {self.ctx.n}"
                f" (offset {_byte_offset(self.text, head.pos)})"
            )
        alpha = tuple(coords)
        guard_index(alpha)
        return Element.basis(Basis(head.value, alpha))

    def _signed_int(self) -> int:
        sign = 1
        if self.peek().kind == "-":
            self.take()
            sign = -1
        return sign * int(self.expect("int").value)

    def _combine(self, op: _Tok, lhs, rhs):
        le, re_ = isinstance(lhs, Element), isinstance(rhs, Element)
        k = op.kind
        if k in "+-":
            if le != re_:
                # a literal zero mixes harmlessly with elements
                if not le and lhs.is_zero():
                    lhs, le = Element(), True
                elif not re_ and rhs.is_zero():
                    rhs, re_ = Element(), True
                else:
                    raise self.error("cannot add a scalar and an algebra element", op)
            return lhs + rhs if k == "+" else lhs - rhs
        if k == "*":
            if le and re_:
                raise self.error("cannot multiply two algebra elements (use the bracket)", op)
            return lhs * rhs
        # division
        if re_:
            raise self.error("cannot divide by an algebra element", op)
        if rhs.is_zero():
            raise self.error("division by zero", op)
        return lhs / rhs


def parse_scalar(text: str, ctx: Context) -> Scalar:
    """Parse a scalar expression over the declared indeterminates of ``ctx``."""
    return _Parser(text, ctx, allow_symbols=False).parse()


def parse_element(text: str, ctx: Context) -> Element:
    """Parse an algebra element such as ``(m1^2-1)/12 * E[1,0] + 2*H[0,0] - C1``."""
    v = _Parser(text, ctx, allow_symbols=True).parse()
    if isinstance(v, Scalar):
        if v.is_zero():
            return Element()
        raise ExprSyntaxError("expected an algebra element, got a bare scalar", 0, text)
    return v


def parse_lattice(text: str, n: int | None = None) -> tuple:
    """Parse ``[1,-2]`` (JSON integer array) into a lattice vector."""
    import json

    try:
        v = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ExprSyntaxError(f"bad lattice vector: {exc.msg}", exc.pos, text) from None
    if not isinstance(v, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in v):
        raise ExprSyntaxError("lattice vector must be an array of integers", 0, text)
    if n is not None and len(v) != n:
        raise DimensionMismatch(f"{v} has {len(v)} coordinates, expected {n}")
    alpha = tuple(v)
    guard_index(alpha)
    return alpha

