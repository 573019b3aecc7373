"""Recursive-descent parser for the concrete formula syntax.

Precedence from tightest to loosest is ``/\\``, ``\\/``, ``vv``; binary
connectives associate to the left, and a quantifier ``E p.`` or ``A p.``
takes everything to its right as its body.  Unicode connectives are
accepted as aliases of the ASCII ones.
"""
from __future__ import annotations

import re

from ..errors import ParseError, PreconditionError
from .nodes import (
    NE,
    And,
    Anon,
    Bot,
    Dep,
    EMight,
    Exc,
    Exists,
    Forall,
    Formula,
    GOr,
    Inc,
    Indep,
    Lit,
    Might,
    NonConst,
    Or,
    PrimInc,
    RelExc,
    RelInc,
    SMight,
    Top,
    is_pl,
    tuple_eq,
    tuple_neq,
)

ATOM_KEYWORDS = {
    "dep", "anon", "incl", "excl", "indep", "rincl", "rexcl",
    "pincl", "nonconst", "might", "smight", "emight",
}
RESERVED = ATOM_KEYWORDS | {"E", "A", "NE", "top", "bot", "vv"}

_UNICODE = {
    "∧": "/\\", "∨": "\\/", "⩒": "vv", "¬": "~", "∃": "E", "∀": "A",
    "⊤": "top", "⊥": "bot", "≠": "!=", "◊": "might", "⧫": "emight",
}

_TOKEN = re.compile(
    r"""\s*(?:
        (?P<op>/\\|\\/|!=|[()~,;.=])
      | (?P<uni>[∧∨⩒¬∃∀⊤⊥≠◊⧫])
      | (?P<num>[0-9]+)
      | (?P<id>[A-Za-z_][A-Za-z0-9_']*)
    )""",
    re.VERBOSE,
)


class _Tok:
    __slots__ = ("kind", "val", "pos")

    def __init__(self, kind, val, pos):
        self.kind, self.val, self.pos = kind, val, pos

    def __repr__(self):
        return f"{self.kind}:{self.val}@{self.pos}"


def tokenize(text: str) -> list[_Tok]:
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        val = m.group(kind)
        start = m.start(kind)
        if kind == "uni":
            val = _UNICODE[val]
            kind = "id" if val[0].isalpha() else "op"
        out.append(_Tok(kind, val, start))
        pos = m.end()
    out.append(_Tok("eof", "", n))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    # token helpers --------------------------------------------------------

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def peek(self, k=1) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def err(self, msg, tok=None):
        tok = tok or self.cur
        return ParseError(msg, tok.pos, self.text)

    def at(self, val) -> bool:
        return self.cur.val == val and self.cur.kind in ("op", "id")

    def take(self, val) -> _Tok:
        if not self.at(val):
            found = self.cur.val or "end of input"
            raise self.err(f"expected {val!r}, found {found!r}")
        t = self.cur
        self.i += 1
        return t

    def var(self) -> str:
        t = self.cur
        if t.kind != "id" or t.val in RESERVED:
            raise self.err("expected a variable")
        self.i += 1
        return t.val

    def is_var(self, tok=None) -> bool:
        tok = tok or self.cur
        return tok.kind == "id" and tok.val not in RESERVED

    # grammar --------------------------------------------------------------

    def formula(self) -> Formula:
        f = self.lax()
        while self.at("vv"):
            self.i += 1
            f = GOr(f, self.lax())
        return f

    def lax(self) -> Formula:
        f = self.conj()
        while self.at("\\/"):
            self.i += 1
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.at("/\\"):
            self.i += 1
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        if self.at("E") or self.at("A"):
            q = self.cur.val
            self.i += 1
            v = self.var()
            self.take(".")
            body = self.formula()
            return Exists(v, body) if q == "E" else Forall(v, body)
        return self.primary()

    def primary(self) -> Formula:
        t = self.cur
        if self.at("("):
            self.i += 1
            f = self.formula()
            self.take(")")
            return f
        if self.at("~"):
            self.i += 1
            return Lit(self.var(), False)
        if self.at("top"):
            self.i += 1
            return Top()
        if self.at("bot"):
            self.i += 1
            return Bot()
        if self.at("NE"):
            self.i += 1
            return NE()
        if t.kind == "id" and t.val in ATOM_KEYWORDS:
            return self.atom()
        if self.is_var():
            names = [self.var()]
            while self.is_var():
                names.append(self.var())
            if self.at("=") or self.at("!="):
                op = self.cur.val
                self.i += 1
                rhs = []
                while self.is_var():
                    rhs.append(self.var())
                if len(rhs) != len(names):
                    raise self.err("both sides of = / != must have the same length", t)
                return tuple_eq(names, rhs) if op == "=" else tuple_neq(names, rhs)
            if len(names) > 1:
                raise self.err("variable sequence outside an atom", t)
            return Lit(names[0])
        raise self.err(f"unexpected {t.val or 'end of input'!r}")

    # atoms ----------------------------------------------------------------

    def arg(self) -> Formula:
        if self.at("("):
            t = self.cur
            self.i += 1
            f = self.formula()
            self.take(")")
            if not is_pl(f):
                raise self.err("atom arguments must be propositional formulas", t)
            return f
        if self.at("~"):
            self.i += 1
            return Lit(self.var(), False)
        if self.at("top"):
            self.i += 1
            return Top()
        if self.at("bot"):
            self.i += 1
            return Bot()
        return Lit(self.var())

    def args(self) -> tuple[Formula, ...]:
        out = []
        while not (self.at(";") or self.at(",") or self.at(")")):
            if self.cur.kind == "eof":
                raise self.err("unclosed atom")
            out.append(self.arg())
        return tuple(out)

    def pl(self) -> Formula:
        t = self.cur
        f = self.lax()
        if not is_pl(f):
            raise self.err("expected a propositional formula", t)
        return f

    def rel_side(self):
        self.take("(")
        xs = self.args()
        self.take(";")
        cond = self.pl()
        self.take(")")
        return xs, cond

    def bits(self) -> tuple[bool, ...]:
        out = []
        while not self.at(","):
            t = self.cur
            if t.kind == "num" and set(t.val) <= {"0", "1"}:
                out.extend(c == "1" for c in t.val)
            elif self.at("top") or self.at("bot"):
                out.append(t.val == "top")
            else:
                raise self.err("expected a constant 0 or 1")
            self.i += 1
        return tuple(out)

    def atom(self) -> Formula:
        start = self.cur
        kw = start.val
        self.i += 1
        self.take("(")
        try:
            if kw in ("might", "smight", "emight"):
                body = self.formula()
                f = {"might": Might, "smight": SMight, "emight": EMight}[kw](body)
            elif kw in ("dep", "anon"):
                xs = self.args()
                self.take(";")
                tgt = self.arg()
                f = (Dep if kw == "dep" else Anon)(xs, tgt)
            elif kw in ("incl", "excl"):
                left = self.args()
                self.take(",")
                right = self.args()
                f = (Inc if kw == "incl" else Exc)(left, right)
            elif kw == "indep":
                cond = self.args()
                self.take(";")
                left = self.args()
                self.take(";")
                right = self.args()
                f = Indep(cond, left, right)
            elif kw in ("rincl", "rexcl"):
                left, alpha = self.rel_side()
                self.take(",")
                right, beta = self.rel_side()
                f = (RelInc if kw == "rincl" else RelExc)(left, alpha, right, beta)
            elif kw == "pincl":
                bits = self.bits()
                self.take(",")
                f = PrimInc(bits, self.args())
            else:
                f = NonConst(self.args())
        except PreconditionError as e:
            raise self.err(str(e), start) from None
        if self.cur.kind == "eof":
            raise self.err("unclosed atom")
        self.take(")")
        return f


def parse(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    if p.cur.kind != "eof":
        raise p.err(f"unexpected {p.cur.val!r}")
    return f
