"""Recursive-descent parser for product expressions and parameter bindings.

Grammar::

    expr      := term { ("*" | "/") term } ;
    term      := prefactor | group ;
    prefactor := signed-rational [ "*" "q" [ "^" integer ] ] | "q" [ "^" integer ] ;
    group     := "(" monomial { "," monomial } ";" base ")" [ "_" length ] ;
    monomial  := [ "-" ] [ rational "*" ] "q" [ "^" integer ] | [ "-" ] rational ;
    base      := "q" [ "^" positive-integer ] ;
    length    := "inf" | positive-integer ;

Example: ``(q^3,q^5;q^8)/(q,q^7;q^8)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from gmpy2 import mpq

from .exact_coefficients import to_rational
from .product_algebra import PochhammerFactor, ProductExpr, QMonomial, format_monomial

__all__ = ["ParseError", "parse_product", "parse_monomial", "parse_params", "print_product", "print_factor"]


class ParseError(ValueError):
    def __init__(self, text: str, offset: int, expected, found: str):
        self.text = text
        self.offset = offset
        self.expected = frozenset(expected)
        self.found = found
        line_start = text.rfind("\n", 0, offset) + 1
        line_end = text.find("\n", offset)
        if line_end < 0:
            line_end = len(text)
        self.line = text.count("\n", 0, offset) + 1
        self.column = offset - line_start + 1
        src = text[line_start:line_end]
        exp = ", ".join(sorted(self.expected))
        msg = (
            f"line {self.line}, column {self.column}: expected {{{exp}}}, found {found}\n"
            f"  {src}\n  {' ' * (offset - line_start)}^"
        )
        super().__init__(msg)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<inf>inf)|(?P<q>q)|(?P<op>[-*/^(),;_]))")


@dataclass(frozen=True)
class _Tok:
    kind: str  # 'num', 'inf', 'q', an operator character, or 'eof'
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            toks.append(_Tok("eof", "end of input", pos))
            return toks
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(text, pos, {"token"}, repr(text[pos]))
        start = m.start(m.lastgroup)
        kind = m.lastgroup if m.lastgroup != "op" else m.group("op")
        toks.append(_Tok(kind, m.group(m.lastgroup), start))
        pos = m.end()


def _describe(tok: _Tok) -> str:
    return "end of input" if tok.kind == "eof" else repr(tok.text)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    # -- helpers --------------------------------------------------------------
    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, expected):
        raise ParseError(self.text, self.tok.pos, expected, _describe(self.tok))

    def expect(self, kind: str, label: str | None = None) -> _Tok:
        if self.tok.kind != kind:
            self.error({label or repr(kind)})
        t = self.tok
        self.i += 1
        return t

    def accept(self, kind: str) -> bool:
        if self.tok.kind == kind:
            self.i += 1
            return True
        return False

    # -- productions -----------------------------------------------------------
    def integer(self) -> int:
        neg = self.accept("-")
        t = self.expect("num", "integer")
        return -int(t.text) if neg else int(t.text)

    def rational(self):
        num = int(self.expect("num", "rational").text)
        if self.tok.kind == "/" and self.peek().kind == "num":
            self.i += 1
            den_tok = self.tok
            den = int(self.expect("num").text)
            if den == 0:
                raise ParseError(self.text, den_tok.pos, {"nonzero denominator"}, "0")
            return to_rational(mpq(num, den))
        return num

    def q_power(self) -> int:
        self.expect("q", "'q'")
        if self.accept("^"):
            return self.integer()
        return 1

    def prefactor(self) -> QMonomial:
        if self.tok.kind == "q":
            return QMonomial(1, self.q_power())
        neg = self.accept("-")
        c = self.rational()
        if neg:
            c = -c
        if self.tok.kind == "*" and self.peek().kind == "q":
            self.i += 1
            return QMonomial(c, self.q_power())
        return QMonomial(c, 0)

    def monomial(self) -> QMonomial:
        if self.tok.kind not in ("-", "num", "q"):
            self.error({"monomial"})
        neg = self.accept("-")
        if self.tok.kind == "q":
            c, e = 1, self.q_power()
        elif self.tok.kind == "num":
            c = self.rational()
            if self.accept("*"):
                e = self.q_power()
            else:
                e = 0
        else:
            self.error({"monomial"})
        return QMonomial(-c if neg else c, e)

    def base(self) -> int:
        if self.tok.kind != "q":
            self.error({"monomial"})  # the base is a bare q-power
        self.i += 1
        if self.accept("^"):
            t = self.expect("num", "positive integer")
            if int(t.text) < 1:
                raise ParseError(self.text, t.pos, {"positive integer"}, repr(t.text))
            return int(t.text)
        return 1

    def group(self, power: int) -> list[PochhammerFactor]:
        self.expect("(", "'('")
        args = [self.monomial()]
        while self.accept(","):
            args.append(self.monomial())
        if self.tok.kind != ";":
            self.error({"','", "';'"})
        self.i += 1
        t = self.base()
        self.expect(")", "')'")
        length = None
        if self.accept("_"):
            if self.accept("inf"):
                length = None
            else:
                tok = self.expect("num", "length")
                length = int(tok.text)
                if length < 1:
                    raise ParseError(self.text, tok.pos, {"'inf'", "positive integer"}, repr(tok.text))
        return [PochhammerFactor(a, t, length, power) for a in args]

    def term(self, pre: QMonomial, factors: list, divide: bool):
        if self.tok.kind == "(":
            factors.extend(self.group(-1 if divide else 1))
            return pre
        if self.tok.kind in ("q", "-", "num"):
            x = self.prefactor()
            return pre / x if divide else pre * x
        self.error({"'('", "'q'", "rational"})

    def expr(self) -> ProductExpr:
        factors: list = []
        pre = self.term(QMonomial(1, 0), factors, False)
        while self.tok.kind in ("*", "/"):
            divide = self.tok.kind == "/"
            self.i += 1
            pre = self.term(pre, factors, divide)
        if self.tok.kind != "eof":
            self.error({"'*'", "'/'", "end of input"})
        return ProductExpr(pre, tuple(factors))


def parse_product(text: str) -> ProductExpr:
    return _Parser(text).expr()


def parse_monomial(text: str) -> QMonomial:
    p = _Parser(text)
    m = p.monomial()
    if p.tok.kind != "eof":
        p.error({"end of input"})
    return m


# ---------------------------------------------------------------------------
# printing


def print_factor(f: PochhammerFactor) -> str:
    return _group_text([f.arg], f.base, f.length)


def _group_text(args, base, length) -> str:
    b = "q" if base == 1 else f"q^{base}"
    s = f"({','.join(format_monomial(a) for a in args)};{b})"
    if length is not None:
        if length == 0:
            raise ValueError("length-0 factors have no text form")
        s += f"_{length}"
    return s


def _prefactor_text(x: QMonomial) -> str:
    s = format_monomial(x)
    # the prefactor rule has no bare "-q"
    if s.startswith("-q"):
        s = "-1*" + s[1:]
    return s


def print_product(p: ProductExpr) -> str:
    runs: list[tuple[int, list]] = []
    for f in p.factors:
        if f.length == 0:
            continue
        sign = 1 if f.power > 0 else -1
        for _ in range(abs(f.power)):
            key = (f.base, f.length, sign)
            if runs and runs[-1][0] == key:
                runs[-1][1].append(f.arg)
            else:
                runs.append((key, [f.arg]))
    pre = p.prefactor
    parts = []
    if pre != QMonomial(1, 0) or not runs or runs[0][0][2] < 0:
        parts.append(_prefactor_text(pre))
    for (base, length, sign), args in runs:
        g = _group_text(args, base, length)
        if parts:
            parts.append(("*" if sign > 0 else "/") + g)
        else:
            parts.append(g)
    return "".join(parts)


# ---------------------------------------------------------------------------
# parameter bindings


class ParamError(ValueError):
    pass


__all__.append("ParamError")


def parse_params(text: str, schema: dict | None = None) -> dict:
    """Parse ``key=value`` pairs.

    ``schema`` maps names to ``"int"``, ``"posint"``, ``"nonneg"`` or
    ``"monomial"``; unknown keys are rejected when a schema is given.
    """
    out = {}
    for item in text.split():
        if "=" not in item:
            raise ParamError(f"expected key=value, got {item!r}")
        key, val = item.split("=", 1)
        if not key.isidentifier():
            raise ParamError(f"bad parameter name {key!r}")
        kind = None
        if schema is not None:
            if key not in schema:
                raise ParamError(f"unknown parameter {key!r}; expected one of {sorted(schema)}")
            kind = schema[key]
        if kind in ("int", "posint", "nonneg") or (kind is None and re.fullmatch(r"-?\d+", val)):
            try:
                v = int(val)
            except ValueError:
                raise ParamError(f"{key} must be an integer, got {val!r}") from None
            if kind == "posint" and v < 1:
                raise ParamError(f"{key} must be >= 1, got {v}")
            if kind == "nonneg" and v < 0:
                raise ParamError(f"{key} must be >= 0, got {v}")
            out[key] = v
        else:
            try:
                out[key] = parse_monomial(val)
            except ParseError as exc:
                raise ParamError(f"{key}: {exc}") from None
    return out
