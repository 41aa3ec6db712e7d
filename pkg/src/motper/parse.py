"""Parser for motivic expressions.

Grammar (whitespace is insignificant except inside iterated integrals)::

    expr   := term (('+' | '-') term)*
    term   := ['-'] factor (('*' factor) | ('/' INT))*
    factor := atom ['^' INT]
    atom   := NUM ['/' NUM] | '(' expr ')' | 'L' | 'zeta(' INT (',' INT)* ')'
            | 'log(' (INT | 'x') ')' | 'I(' pt ';' letter* ';' pt ')'
            | 'Li' INT '(x)' | 'Li[' ('e0' | 'e1' | 'e-1')* '](x)'

Negative arguments of ``zeta`` are alternating signs.  Everything printed by
the library parses back to the same element.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .motivic import X, MotivicExpr

_TOKEN = re.compile(r"""
    \s*(?:
      (?P<num>\d+)
    | (?P<li>Li(?:\d+|\[[^\]]*\])\(x\))
    | (?P<ii>I\([^)]*\))
    | (?P<zeta>zeta\([^)]*\))
    | (?P<log>log\([^)]*\))
    | (?P<lef>L\b)
    | (?P<op>[-+*/^()])
    )""", re.X)


def _tokens(s: str) -> list[tuple[str, str]]:
    out, pos = [], 0
    s = s.strip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input at {s[pos:pos + 12]!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
        while pos < len(s) and s[pos].isspace():
            pos += 1
    return out


class _Parser:
    def __init__(self, s: str):
        self.toks = _tokens(s)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, val=None):
        t = self.peek()
        if t[0] is None or (val is not None and t[1] != val):
            raise ParseError(f"expected {val or 'a token'}, found {t[1]!r}")
        self.i += 1
        return t

    def expr(self) -> MotivicExpr:
        out = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self) -> MotivicExpr:
        neg = False
        while self.peek()[1] in ("-", "+"):
            neg ^= self.take()[1] == "-"
        out = self.factor()
        while self.peek()[1] in ("*", "/"):
            if self.take()[1] == "*":
                out = out * self.factor()
                continue
            d = self.take()
            if d[0] != "num" or int(d[1]) == 0:
                raise ParseError("can only divide by a nonzero integer")
            out = out * Fraction(1, int(d[1]))
        return -out if neg else out

    def factor(self) -> MotivicExpr:
        a = self.atom()
        if self.peek()[1] == "^":
            self.take()
            k = self.take()
            if k[0] != "num":
                raise ParseError("exponent must be a non-negative integer")
            a = a ** int(k[1])
        return a

    def atom(self) -> MotivicExpr:
        kind, val = self.take()
        if kind == "num":
            q = Fraction(int(val))
            if self.peek()[1] == "/":
                self.take()
                d = self.take()
                if d[0] != "num" or int(d[1]) == 0:
                    raise ParseError("bad denominator")
                q /= int(d[1])
            return MotivicExpr.scalar(q)
        if val == "(":
            e = self.expr()
            self.take(")")
            return e
        if kind == "lef":
            return MotivicExpr.lef(1)
        if kind == "zeta":
            return MotivicExpr.zeta(_ints(val[5:-1], "zeta"))
        if kind == "log":
            arg = val[4:-1].strip()
            if arg == "x":
                return MotivicExpr.ii((0,), 0, X)
            if not arg.isdigit() or int(arg) < 2:
                raise ParseError(f"log argument must be a prime or x, got {arg!r}")
            return MotivicExpr.log(int(arg))
        if kind == "ii":
            return _ii(val)
        if kind == "li":
            return _li(val)
        raise ParseError(f"unexpected {val!r}")


def _ints(s: str, what: str) -> tuple[int, ...]:
    try:
        out = tuple(int(p) for p in s.split(","))
    except ValueError as exc:
        raise ParseError(f"{what} arguments must be integers: {s!r}") from exc
    if not out:
        raise ParseError(f"empty {what}")
    return out


def _point(s: str):
    s = s.strip()
    if s == "x":
        return X
    try:
        return int(s)
    except ValueError as exc:
        raise ParseError(f"bad endpoint {s!r}") from exc


def _ii(val: str) -> MotivicExpr:
    parts = val[2:-1].split(";")
    if len(parts) != 3:
        raise ParseError("iterated integrals are written I(a; w1 ... wn; b)")
    try:
        w = tuple(int(a) for a in parts[1].replace(",", " ").split())
    except ValueError as exc:
        raise ParseError(f"bad letters in {val!r}") from exc
    return MotivicExpr.ii(w, _point(parts[0]), _point(parts[2]))


def _li(val: str) -> MotivicExpr:
    body = val[2:-3]
    if body.startswith("["):
        letters = body[1:-1].split()
        w = []
        for a in letters:
            if a not in ("e0", "e1", "e-1"):
                raise ParseError(f"bad letter {a!r}")
            w.append(int(a[1:]))
        w = tuple(w)
        if not w:
            raise ParseError("empty word")
    else:
        n = int(body)
        if n < 1:
            raise ParseError("Li index must be positive")
        w = (1,) + (0,) * (n - 1)
    sign = (-1) ** sum(1 for a in w if a != 0)
    return MotivicExpr.ii(w, 0, X) * sign


def parse_expr(s: str) -> MotivicExpr:
    p = _Parser(s)
    if not p.toks:
        raise ParseError("empty expression")
    e = p.expr()
    if p.peek()[0] is not None:
        raise ParseError(f"trailing input {p.peek()[1]!r}")
    return e
