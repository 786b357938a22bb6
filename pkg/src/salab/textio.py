"""Text syntax for polynomials and forms.

Grammar (whitespace ignored)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*' | '^' | '/') factor)*
    factor := atom ['^' INT]
    atom   := NUMBER ['i'] | 'i' | zK | zbK | t | dzK | dzbK | '(' expr ')'

``*`` is the wedge product (ordinary product on functions), ``^`` followed by
an integer is a power and otherwise a wedge, and ``/`` divides by a number.
Complex rationals read ``3/2+1/3i``.
"""

from __future__ import annotations

import re
from typing import List, Optional, Tuple

from gmpy2 import mpq

from .forms import Form
from .poly import GaussQ, Poly, unpack


class ParseError(ValueError):
    def __init__(self, msg: str, line: Optional[int] = None, column: Optional[int] = None, source: str = ""):
        self.msg = msg
        self.line = line
        self.column = column
        self.source = source
        where = []
        if source:
            where.append(source)
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        super().__init__(f"{msg} ({', '.join(where)})" if where else msg)


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?i?)|(?P<diff>dzb\d+|dz\d+)|(?P<var>zb\d+|z\d+|t)"
    r"|(?P<imag>i)|(?P<op>[-+*^/()]))"
)


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = text[pos:].lstrip()
            col = len(text) - len(bad) + 1
            raise ParseError(f"unexpected character {bad[:1]!r}", column=col)
        kind = m.lastgroup
        start = m.start(kind) + 1
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text) + 1))
    return out


def _number(tok: str) -> GaussQ:
    imag = tok.endswith("i")
    if imag:
        tok = tok[:-1]
    v = mpq(tok)
    return GaussQ(0, v) if imag else GaussQ(v, 0)


class _Parser:
    def __init__(self, text: str, n: int):
        self.toks = _tokenize(text)
        self.i = 0
        self.n = n

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, column=tok[2])

    def parse(self) -> Form:
        out = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return out

    def expr(self) -> Form:
        sign = 1
        if self.peek()[:2] in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        out = self.term()
        if sign < 0:
            out = -out
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> Form:
        from .forms import wedge

        out = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in "*^/":
            op = self.take()[1]
            if op == "/":
                tok = self.take()
                if tok[0] != "num" or tok[1].endswith("i"):
                    self.error("division is only by a rational number", tok)
                c = _number(tok[1])
                if not c:
                    self.error("division by zero", tok)
                out = out * (GaussQ(1) / c)
            else:
                out = wedge(out, self.factor())
        return out

    def factor(self) -> Form:
        from .forms import wedge

        base = self.atom()
        if self.peek()[:2] == ("op", "^") and self.toks[self.i + 1][0] == "num" and self.toks[self.i + 1][1].isdigit():
            self.take()
            k = int(self.take()[1])
            out = Form.scalar(self.n, 1)
            for _ in range(k):
                out = wedge(out, base)
            return out
        return base

    def _index(self, tok, digits: str) -> int:
        k = int(digits)
        if not 1 <= k <= self.n:
            self.error(f"index {k} outside 1..{self.n} in {tok[1]!r}", tok)
        return k

    def atom(self) -> Form:
        tok = self.take()
        kind, val, _ = tok
        n = self.n
        if kind == "num":
            return Form.scalar(n, Poly.const(_number(val)))
        if kind == "imag":
            return Form.scalar(n, Poly.const(GaussQ(0, 1)))
        if kind == "var":
            if val == "t":
                return Form.scalar(n, Poly.t())
            if val.startswith("zb"):
                return Form.scalar(n, Poly.zb(self._index(tok, val[2:])))
            return Form.scalar(n, Poly.z(self._index(tok, val[1:])))
        if kind == "diff":
            if val.startswith("dzb"):
                return Form.dzb(n, self._index(tok, val[3:]))
            return Form.dz(n, self._index(tok, val[2:]))
        if (kind, val) == ("op", "("):
            out = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.error("expected ')'")
            self.take()
            return out
        if kind == "end":
            self.error("unexpected end of expression", tok)
        self.error(f"unexpected {val!r}", tok)


def parse_form(text: str, n: int) -> Form:
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}")
    if not text.strip():
        raise ParseError("empty expression", column=1)
    return _Parser(text, n).parse()


def parse_poly(text: str, n: int) -> Poly:
    f = parse_form(text, n)
    if any(k != ((), ()) for k in f.terms):
        raise ParseError(f"expected a function, got a form of bidegree {sorted(f.bidegrees())}")
    return f.scalar_part()


# -- printing ---------------------------------------------------------------

def format_gauss(c: GaussQ) -> str:
    re_, im = c.re, c.im
    if not im:
        return str(re_)
    if im == 1:
        ims = "i"
    elif im == -1:
        ims = "-i"
    else:
        ims = f"{im}i"
    if not re_:
        return ims
    return f"({re_}{'' if ims.startswith('-') else '+'}{ims})"


def _powers(e: int) -> List[Tuple[int, int]]:
    return sorted(unpack(e).items())


def _mono_key(e: int):
    pw = unpack(e)
    total = sum(pw.values())
    top = max(pw) if pw else 0
    # graded order; t (slot 0) sorts after coordinates
    vec = tuple(pw.get(s, 0) for s in list(range(1, top + 1, 2)) + list(range(2, top + 1, 2)) + [0])
    return (total, vec)


def format_monomial(e: int) -> str:
    parts = []
    pw = unpack(e)
    top = max(pw) if pw else 0
    order = list(range(1, top + 1, 2)) + list(range(2, top + 1, 2)) + [0]
    for s in order:
        p = pw.get(s)
        if not p:
            continue
        if s == 0:
            name = "t"
        elif s & 1:
            name = f"z{(s + 1) // 2}"
        else:
            name = f"zb{s // 2}"
        parts.append(name if p == 1 else f"{name}^{p}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    if not p:
        return "0"
    pieces = []
    for e in sorted(p.exponents(), key=_mono_key, reverse=True):
        c = p.coeff(e)
        mono = format_monomial(e)
        if not mono:
            pieces.append(format_gauss(c))
            continue
        if c == 1:
            pieces.append(mono)
        elif c == -1:
            pieces.append("-" + mono)
        else:
            pieces.append(f"{format_gauss(c)}*{mono}")
    out = pieces[0]
    for s in pieces[1:]:
        out += s if s.startswith("-") else "+" + s
    return out


def format_basis(I, J) -> str:
    return "^".join([f"dz{k}" for k in I] + [f"dzb{k}" for k in J])


def format_form(f: Form) -> str:
    if not f:
        return "0"
    pieces = []
    for (I, J) in sorted(f.terms, key=lambda k: (len(k[0]) + len(k[1]), len(k[1]), k)):
        p = f.terms[(I, J)]
        s = format_poly(p)
        basis = format_basis(I, J)
        if not basis:
            pieces.append(s if p.nterms() == 1 else f"({s})")
            continue
        if p.nterms() > 1:
            pieces.append(f"({s})*{basis}")
        elif s == "1":
            pieces.append(basis)
        elif s == "-1":
            pieces.append("-" + basis)
        else:
            pieces.append(f"{s}*{basis}")
    out = pieces[0]
    for s in pieces[1:]:
        out += s if s.startswith("-") else "+" + s
    return out
