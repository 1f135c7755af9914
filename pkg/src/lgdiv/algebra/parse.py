"""Recursive-descent parser for rational-function expressions in t.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := atom ('^' uint)?
    atom   := 't' | constant-symbol | uint | '(' expr ')'
"""

from __future__ import annotations

import re

from .field import FieldCtx
from .ratfunc import RatFunc
from ..errors import CtxMismatch, ExprSyntaxError, ZeroDenominator

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        num, ident, sym = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            out.append(("num", num, start))
        elif ident is not None:
            out.append(("ident", ident, start))
        elif sym is not None:
            if sym.isspace():
                pos = m.end()
                continue
            out.append(("sym", sym, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, ctx: FieldCtx, symbols: dict | None):
        self.toks = _tokenize(text)
        self.i = 0
        self.ctx = ctx
        self.symbols = symbols or {}

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, sym):
        kind, val, pos = self.take()
        if kind != "sym" or val != sym:
            raise ExprSyntaxError(f"expected {sym!r}, found {val or 'end of input'!r}", pos)

    def expr(self):
        v = self.term()
        while self.peek()[0] == "sym" and self.peek()[1] in "+-":
            self.take()
            v = v + self.term()
        return v

    def term(self):
        v = self.factor()
        while self.peek()[0] == "sym" and self.peek()[1] in "*/":
            op = self.take()
            rhs = self.factor()
            if op[1] == "*":
                v = v * rhs
            else:
                if rhs.is_zero():
                    raise ZeroDenominator(f"division by zero at position {op[2]}")
                v = v / rhs
        return v

    def factor(self):
        v = self.atom()
        if self.peek()[0] == "sym" and self.peek()[1] == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                raise ExprSyntaxError("exponent must be an unsigned integer", pos)
            v = v ** int(val)
        return v

    def atom(self):
        kind, val, pos = self.take()
        ctx = self.ctx
        if kind == "num":
            return RatFunc.const(ctx, int(val) & 1)
        if kind == "ident":
            if val == "t":
                return RatFunc.t(ctx)
            if val in self.symbols:
                return self.symbols[val]
            if ctx.generator_name is not None and val == ctx.generator_name:
                return RatFunc.const(ctx, ctx.gen().bits)
            raise CtxMismatch(f"unknown constant symbol {val!r} for {ctx!r} at position {pos}")
        if kind == "sym" and val == "(":
            v = self.expr()
            self.expect(")")
            return v
        raise ExprSyntaxError(f"unexpected {val or 'end of input'!r}", pos)


def parse_ratfunc(text: str, ctx: FieldCtx) -> RatFunc:
    p = _Parser(text, ctx, None)
    v = p.expr()
    kind, val, pos = p.peek()
    if kind != "end":
        raise ExprSyntaxError(f"trailing input {val!r}", pos)
    return v
