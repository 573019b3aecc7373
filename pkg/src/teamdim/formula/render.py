"""Canonical ASCII rendering; :func:`parse` reads it back to the same tree."""
from __future__ import annotations

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
)

_BIN = {And: "/\\", Or: "\\/", GOr: "vv"}


def _arg(a: Formula) -> str:
    if isinstance(a, (Lit, Top, Bot)):
        return render(a)
    return "(" + render(a) + ")"


def _args(xs) -> str:
    return " ".join(_arg(a) for a in xs)


def _sub(f: Formula) -> str:
    """A child of a connective or the body of a quantifier."""
    s = render(f)
    if isinstance(f, (And, Or, GOr, Exists, Forall)):
        return "(" + s + ")"
    return s


def render(f: Formula) -> str:
    t = type(f)
    if t is Lit:
        return f.var if f.pos else "~" + f.var
    if t is Top:
        return "top"
    if t is Bot:
        return "bot"
    if t is NE:
        return "NE"
    if t in _BIN:
        return f"{_sub(f.left)} {_BIN[t]} {_sub(f.right)}"
    if t is Exists or t is Forall:
        q = "E" if t is Exists else "A"
        return f"{q} {f.var}.{_sub(f.body)}"
    if t is Might:
        return f"might({render(f.body)})"
    if t is SMight:
        return f"smight({render(f.body)})"
    if t is EMight:
        return f"emight({render(f.body)})"
    if t is Dep or t is Anon:
        kw = "dep" if t is Dep else "anon"
        return f"{kw}({_args(f.args)}; {_arg(f.target)})"
    if t is Inc or t is Exc:
        kw = "incl" if t is Inc else "excl"
        return f"{kw}({_args(f.left)}, {_args(f.right)})".replace("(, )", "(,)")
    if t is Indep:
        return f"indep({_args(f.cond)}; {_args(f.left)}; {_args(f.right)})"
    if t is RelInc or t is RelExc:
        kw = "rincl" if t is RelInc else "rexcl"
        left = f"({_args(f.left)}; {render(f.alpha)})"
        right = f"({_args(f.right)}; {render(f.beta)})"
        return f"{kw}({left}, {right})"
    if t is PrimInc:
        bits = " ".join("1" if b else "0" for b in f.bits)
        return f"pincl({bits}, {_args(f.args)})".replace("(, )", "(,)")
    if t is NonConst:
        return f"nonconst({_args(f.args)})"
    raise TypeError(f"cannot render {f!r}")
