"""Text, LaTeX and JSON forms of differential polynomials.

Text grammar (whitespace is ignored)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ['^' INT]
    atom   := INT | '(' INT '/' INT ')' | '(' expr ')' | jet
    jet    := NAME ['_' 't'* 'x'*]

``x`` and ``t`` are the coordinates; any other name must be a declared
dependent symbol.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction

from .jetpoly import COORDINATE, DiffPoly, JetVar, Key

DEFAULT_DEPENDENTS = ("u", "v", "w", "f", "h")


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*(?:_[A-Za-z]+)?)|(?P<op>[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, dependents):
        self.toks = _tokenize(text)
        self.i = 0
        self.dependents = set(dependents)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, off = self.take()
        if val != value or kind == "end":
            raise ParseError(f"expected {value!r}", off)

    def expr(self) -> DiffPoly:
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        result = self.term().scale(sign)
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
            result = result + self.term().scale(sign)
        return result

    def term(self) -> DiffPoly:
        result = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            result = result * self.factor()
        return result

    def factor(self) -> DiffPoly:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, val, off = self.take()
            if kind != "int":
                raise ParseError("expected integer exponent", off)
            base = base ** int(val)
        return base

    def atom(self) -> DiffPoly:
        kind, val, off = self.take()
        if kind == "int":
            return DiffPoly.const(int(val))
        if kind == "name":
            return DiffPoly.var(self.jet(val, off))
        if kind == "op" and val == "(":
            # rational literal (p/q) or (-p/q)
            save = self.i
            toks = self.toks[self.i:self.i + 5]
            vals = [t[1] for t in toks]
            kinds = [t[0] for t in toks]
            if kinds[:4] == ["int", "op", "int", "op"] and vals[1] == "/" and vals[3] == ")":
                self.i += 4
                return DiffPoly.const(_rational(vals[0], vals[2], toks[2][2]))
            if vals[:1] == ["-"] and kinds[1:5] == ["int", "op", "int", "op"] and vals[2] == "/" and vals[4] == ")":
                self.i += 5
                return DiffPoly.const(-_rational(vals[1], vals[3], toks[3][2]))
            self.i = save
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError("unexpected end of input" if kind == "end" else f"unexpected token {val!r}", off)

    def jet(self, name: str, off: int) -> JetVar:
        symbol, _, suffix = name.partition("_")
        if symbol in ("t", "x"):
            if suffix:
                raise ParseError(f"coordinate {symbol!r} takes no derivatives", off)
            return JetVar.coord(symbol)
        if symbol not in self.dependents:
            raise ParseError(f"unknown symbol {symbol!r}", off)
        if "_" in name and not re.fullmatch(r"t*x*", suffix or "?"):
            raise ParseError(f"malformed jet suffix {suffix!r} (t-orders first, then x-orders)", off)
        return JetVar.jet(symbol, suffix.count("t"), suffix.count("x"))


def _rational(p: str, q: str, off: int) -> Fraction:
    if int(q) == 0:
        raise ParseError("zero denominator", off)
    return Fraction(int(p), int(q))


def parse(text: str, dependents=DEFAULT_DEPENDENTS) -> DiffPoly:
    """Parse the text form of a differential polynomial."""
    p = _Parser(text, dependents)
    if p.peek()[0] == "end":
        raise ParseError("empty expression", p.peek()[2])
    result = p.expr()
    kind, val, off = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected token {val!r}", off)
    return result


# ---------------------------------------------------------------------------
# formatting

def _text_monomial(k: Key) -> str:
    return "*".join(v.name() if e == 1 else f"{v.name()}^{e}" for v, e in k)


def _latex_var(v: JetVar) -> str:
    if v.kind == COORDINATE or (v.t_order == 0 and v.x_order == 0):
        return v.symbol
    return f"{v.symbol}_{{{'t' * v.t_order}{'x' * v.x_order}}}"


def _latex_monomial(k: Key) -> str:
    return " ".join(_latex_var(v) if e == 1 else f"{_latex_var(v)}^{{{e}}}" for v, e in k)


def _text_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"({c.numerator}/{c.denominator})"


def _latex_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"\\frac{{{c.numerator}}}{{{c.denominator}}}"


def _join(P: DiffPoly, coeff, mono, sep: str) -> str:
    parts = []
    for i, (k, c) in enumerate(P.terms()):
        neg = c < 0
        a = -c if neg else c
        if not k:
            body = coeff(a)
        elif a == 1:
            body = mono(k)
        else:
            body = f"{coeff(a)}{sep}{mono(k)}"
        if i == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts) or "0"


def to_json(P: DiffPoly) -> dict:
    return {
        "terms": [
            {
                "coeff": f"{c.numerator}/{c.denominator}",
                "factors": [
                    {"sym": v.symbol, "t": v.t_order, "x": v.x_order, "pow": e} for v, e in k
                ],
            }
            for k, c in P.terms()
        ]
    }


def from_json(obj) -> DiffPoly:
    if isinstance(obj, str):
        obj = json.loads(obj)
    monos = []
    for term in obj["terms"]:
        factors = []
        for f in term["factors"]:
            if f["sym"] in ("t", "x"):
                v = JetVar.coord(f["sym"])
            else:
                v = JetVar.jet(f["sym"], f["t"], f["x"])
            factors.append((v, f["pow"]))
        monos.append((factors, Fraction(term["coeff"])))
    return DiffPoly.from_monomials(monos)


def format_poly(P: DiffPoly, fmt: str = "text") -> str:
    """Render ``P`` as ``text``, ``latex`` or ``json``."""
    if fmt == "text":
        return _join(P, _text_coeff, _text_monomial, "*")
    if fmt == "latex":
        return _join(P, _latex_coeff, _latex_monomial, " ")
    if fmt == "json":
        return json.dumps(to_json(P), sort_keys=True)
    raise ValueError(f"unknown format {fmt!r}")


__all__ = ["ParseError", "parse", "format_poly", "to_json", "from_json", "DEFAULT_DEPENDENTS"]
