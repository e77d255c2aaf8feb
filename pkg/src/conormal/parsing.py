"""The declarative input language.

::

    # comments run to the end of the line
    ring x y z s;
    param s;
    mode plane;                        # optional: plane | trivialized
    family X = x^2 + y^2 + s, x^2 + z^2 - s;
    ideal I = x^2, x*y;

Polynomials use ``+ - * ^``, parentheses, integer literals and division by a
nonzero numeric literal (``3/4*x``).  Multiplication is always explicit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .algebra import PolynomialRing
from .errors import DomainError, ParseError

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)|(?P<num>\d+)|"
    r"(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^(),;=])"
)
KEYWORDS = {"ring", "param", "mode", "family", "ideal"}
MODES = {"plane": "biprojective-plane", "trivialized": "affine-trivialized"}


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text):
    out, line, col, pos = [], 1, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        s = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind not in ("ws", "comment"):
                out.append(Token(kind, s, line, col))
            col += len(s)
        pos = m.end()
    out.append(Token("eof", "", line, col))
    return out


class _Stream:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def expect(self, text):
        t = self.next()
        if t.text != text:
            shown = t.text or "end of input"
            raise ParseError(f"expected {text!r}, found {shown!r}", t.line, t.col)
        return t


class _PolyParser:
    def __init__(self, stream, ring):
        self.s = stream
        self.ring = ring

    def expr(self):
        t = self.s.peek()
        if t.text in ("+", "-"):
            self.s.next()
            val = self.term()
            if t.text == "-":
                val = -val
        else:
            val = self.term()
        while self.s.peek().text in ("+", "-"):
            op = self.s.next().text
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.factor()
        while True:
            t = self.s.peek()
            if t.text == "*":
                self.s.next()
                val = val * self.factor()
            elif t.text == "/":
                self.s.next()
                d = self.s.next()
                if d.kind != "num":
                    raise ParseError("only division by a numeric literal is allowed", d.line, d.col)
                if int(d.text) == 0:
                    raise ParseError("division by zero", d.line, d.col)
                val = val / int(d.text)
            elif t.kind in ("name", "num") or t.text == "(":
                raise ParseError(f"missing operator before {t.text!r} (multiplication needs '*')", t.line, t.col)
            else:
                return val

    def factor(self):
        t = self.s.peek()
        if t.text == "-":
            self.s.next()
            return -self.factor()
        base = self.atom()
        if self.s.peek().text == "^":
            self.s.next()
            e = self.s.next()
            if e.kind != "num":
                raise ParseError("exponent must be a nonnegative integer literal", e.line, e.col)
            base = base ** int(e.text)
        return base

    def atom(self):
        t = self.s.next()
        if t.kind == "num":
            return self.ring.constant(int(t.text))
        if t.kind == "name":
            if t.text not in self.ring:
                raise ParseError(f"undeclared variable {t.text!r}", t.line, t.col)
            return self.ring.gen(t.text)
        if t.text == "(":
            val = self.expr()
            self.s.expect(")")
            return val
        shown = t.text or "end of input"
        raise ParseError(f"unexpected {shown!r} in polynomial", t.line, t.col)


def parse_polynomial(text, ring):
    s = _Stream(tokenize(text))
    p = _PolyParser(s, ring).expr()
    t = s.peek()
    if t.kind != "eof":
        raise ParseError(f"unexpected {t.text!r} after polynomial", t.line, t.col)
    return p


@dataclass
class SessionInput:
    variables: tuple
    parameter: str | None = None
    mode: str | None = None
    objects: dict = field(default_factory=dict)    # name -> (kind, [Polynomial])

    @property
    def ring(self):
        return PolynomialRing(self.variables)

    def get(self, name=None):
        if not self.objects:
            raise DomainError("the input declares no family or ideal")
        if name is None:
            name = next(iter(self.objects))
        if name not in self.objects:
            raise DomainError(f"no family or ideal named {name!r}")
        return name, self.objects[name]

    def family(self, name=None):
        """The named object as a ``FamilySpec`` (positions are all non-parameter variables)."""
        from .geometry import FamilySpec

        name, (kind, gens) = self.get(name)
        par = self.parameter
        uses_par = par is not None and any(par in g.variables() for g in gens)
        param = par if kind == "family" else None
        if param is None and uses_par:
            positions = list(self.variables)
        else:
            positions = [v for v in self.variables if v != par]
        mode = self.mode or "affine-trivialized"
        return FamilySpec.from_polys(gens, positions=positions, parameter=param, name=name, mode=mode)


def parse_input(text):
    """Parse a whole session; diagnostics carry line and column."""
    s = _Stream(tokenize(text))
    session = None
    while s.peek().kind != "eof":
        t = s.next()
        if t.kind != "name" or t.text not in KEYWORDS:
            raise ParseError(f"expected a statement keyword, found {t.text!r}", t.line, t.col)
        kw = t.text
        if kw == "ring":
            if session is not None:
                raise ParseError("ring declared twice", t.line, t.col)
            names = []
            while s.peek().kind == "name":
                n = s.next()
                if n.text in names:
                    raise ParseError(f"variable {n.text!r} declared twice", n.line, n.col)
                names.append(n.text)
            if not names:
                raise ParseError("ring needs at least one variable", t.line, t.col)
            s.expect(";")
            session = SessionInput(tuple(names))
            continue
        if session is None:
            raise ParseError("declare the ring first", t.line, t.col)
        if kw == "param":
            n = s.next()
            if n.kind != "name":
                raise ParseError("param expects one variable name", n.line, n.col)
            if n.text not in session.variables:
                raise ParseError(f"undeclared variable {n.text!r}", n.line, n.col)
            if s.peek().text != ";":
                x = s.peek()
                raise ParseError("param takes exactly one variable", x.line, x.col)
            s.expect(";")
            session.parameter = n.text
        elif kw == "mode":
            n = s.next()
            if n.text not in MODES:
                raise ParseError(f"unknown mode {n.text!r}; use plane or trivialized", n.line, n.col)
            s.expect(";")
            session.mode = MODES[n.text]
        else:
            n = s.next()
            if n.kind != "name" or n.text in KEYWORDS:
                raise ParseError(f"{kw} needs a name", n.line, n.col)
            if n.text in session.objects:
                raise ParseError(f"{n.text!r} declared twice", n.line, n.col)
            s.expect("=")
            ring = session.ring
            gens = [_PolyParser(s, ring).expr()]
            while s.peek().text == ",":
                s.next()
                gens.append(_PolyParser(s, ring).expr())
            s.expect(";")
            session.objects[n.text] = (kw, gens)
    if session is None:
        raise ParseError("empty input: expected 'ring ...;'", 1, 1)
    return session


def format_session(session):
    """Print a session in the input language; ``parse_input`` inverts it."""
    lines = ["ring " + " ".join(session.variables) + ";"]
    if session.parameter:
        lines.append(f"param {session.parameter};")
    if session.mode:
        inv = {v: k for k, v in MODES.items()}
        lines.append(f"mode {inv[session.mode]};")
    for name, (kind, gens) in session.objects.items():
        lines.append(f"{kind} {name} = " + ", ".join(str(g) for g in gens) + ";")
    return "\n".join(lines) + "\n"
