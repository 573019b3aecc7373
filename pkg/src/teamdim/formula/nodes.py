"""Formula syntax trees.

Every node is an immutable dataclass compared structurally.  Atom
arguments are tuples of propositional formulas; an atom whose arguments
are all positive literals is *plain*, otherwise it is the extended
variant of the same atom (kind ``ext_dep`` and so on).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from ..errors import PreconditionError


class Formula:
    __slots__ = ()

    def children(self) -> tuple["Formula", ...]:
        return ()

    @property
    def kind(self) -> str:
        return _KIND[type(self)]

    def walk(self) -> Iterator["Formula"]:
        """Preorder traversal."""
        stack = [self]
        while stack:
            f = stack.pop()
            yield f
            stack.extend(reversed(f.children()))

    def __str__(self):
        from .render import render

        return render(self)

    # operator sugar for building trees in code
    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)


@dataclass(frozen=True, slots=True)
class Top(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Bot(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Lit(Formula):
    var: str
    pos: bool = True


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, slots=True)
class Or(Formula):
    """Lax split disjunction."""

    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, slots=True)
class GOr(Formula):
    """Global (Boolean) disjunction: one of the disjuncts holds in the whole team."""

    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, slots=True)
class Exists(Formula):
    var: str
    body: Formula

    def children(self):
        return (self.body,)


@dataclass(frozen=True, slots=True)
class Forall(Formula):
    var: str
    body: Formula

    def children(self):
        return (self.body,)


@dataclass(frozen=True, slots=True)
class NE(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Might(Formula):
    body: Formula

    def children(self):
        return (self.body,)


@dataclass(frozen=True, slots=True)
class SMight(Formula):
    body: Formula

    def children(self):
        return (self.body,)


@dataclass(frozen=True, slots=True)
class EMight(Formula):
    body: Formula

    def children(self):
        return (self.body,)


# ---------------------------------------------------------------------------
# atoms


def is_pl(f: Formula) -> bool:
    """Quantifier-free and atom-free, built from literals with ∧ and ∨."""
    if isinstance(f, (Top, Bot, Lit)):
        return True
    if isinstance(f, (And, Or)):
        return is_pl(f.left) and is_pl(f.right)
    return False


def _check_args(*groups):
    for g in groups:
        for a in g:
            if not is_pl(a):
                raise PreconditionError(f"atom argument is not a propositional formula: {a!r}")


def _plain(args) -> bool:
    return all(isinstance(a, Lit) and a.pos for a in args)


def vars_of(args) -> tuple[str, ...]:
    return tuple(a.var for a in args)


def as_args(xs) -> tuple[Formula, ...]:
    return tuple(Lit(x) if isinstance(x, str) else x for x in xs)


class Atom(Formula):
    __slots__ = ()

    def arg_groups(self) -> tuple[tuple[Formula, ...], ...]:
        raise NotImplementedError

    @property
    def plain(self) -> bool:
        return all(_plain(g) for g in self.arg_groups())

    @property
    def kind(self) -> str:
        base = _KIND[type(self)]
        return base if self.plain else "ext_" + base

    @property
    def arity(self):
        return len(self.arg_groups()[0])


@dataclass(frozen=True, slots=True)
class Dep(Atom):
    args: tuple[Formula, ...]
    target: Formula

    def __post_init__(self):
        object.__setattr__(self, "args", as_args(self.args))
        if isinstance(self.target, str):
            object.__setattr__(self, "target", Lit(self.target))
        _check_args(self.args, (self.target,))

    def arg_groups(self):
        return (self.args, (self.target,))


@dataclass(frozen=True, slots=True)
class Anon(Atom):
    args: tuple[Formula, ...]
    target: Formula

    def __post_init__(self):
        object.__setattr__(self, "args", as_args(self.args))
        if isinstance(self.target, str):
            object.__setattr__(self, "target", Lit(self.target))
        _check_args(self.args, (self.target,))

    def arg_groups(self):
        return (self.args, (self.target,))


class _Pair(Atom):
    __slots__ = ()

    def __post_init__(self):
        object.__setattr__(self, "left", as_args(self.left))
        object.__setattr__(self, "right", as_args(self.right))
        if len(self.left) != len(self.right):
            raise PreconditionError("both sides of the atom must have the same length")
        _check_args(self.left, self.right)

    def arg_groups(self):
        return (self.left, self.right)


@dataclass(frozen=True, slots=True)
class Inc(_Pair):
    left: tuple[Formula, ...]
    right: tuple[Formula, ...]


@dataclass(frozen=True, slots=True)
class Exc(_Pair):
    left: tuple[Formula, ...]
    right: tuple[Formula, ...]


@dataclass(frozen=True, slots=True)
class Indep(Atom):
    """Conditional independence ``cond : left ⊥ right``; variables only."""

    cond: tuple[Formula, ...]
    left: tuple[Formula, ...]
    right: tuple[Formula, ...]

    def __post_init__(self):
        for name in ("cond", "left", "right"):
            g = as_args(getattr(self, name))
            if not _plain(g):
                raise PreconditionError("independence atoms take variables only")
            object.__setattr__(self, name, g)

    def arg_groups(self):
        return (self.cond, self.left, self.right)

    @property
    def arity(self):
        return (len(self.cond), len(self.left), len(self.right))


class _Rel(Atom):
    __slots__ = ()

    def __post_init__(self):
        object.__setattr__(self, "left", as_args(self.left))
        object.__setattr__(self, "right", as_args(self.right))
        if len(self.left) != len(self.right):
            raise PreconditionError("both sides of the atom must have the same length")
        _check_args(self.left, self.right, (self.alpha, self.beta))

    def arg_groups(self):
        return (self.left, self.right)

    def children(self):
        return ()


@dataclass(frozen=True, slots=True)
class RelInc(_Rel):
    left: tuple[Formula, ...]
    alpha: Formula
    right: tuple[Formula, ...]
    beta: Formula


@dataclass(frozen=True, slots=True)
class RelExc(_Rel):
    left: tuple[Formula, ...]
    alpha: Formula
    right: tuple[Formula, ...]
    beta: Formula


@dataclass(frozen=True, slots=True)
class PrimInc(Atom):
    """Primitive inclusion: the constant tuple ``bits`` occurs among the values of ``args``."""

    bits: tuple[bool, ...]
    args: tuple[Formula, ...]

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(bool(b) for b in self.bits))
        object.__setattr__(self, "args", as_args(self.args))
        if len(self.bits) != len(self.args):
            raise PreconditionError("constant tuple and variable tuple differ in length")
        _check_args(self.args)

    def arg_groups(self):
        return (self.args,)


@dataclass(frozen=True, slots=True)
class NonConst(Atom):
    args: tuple[Formula, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", as_args(self.args))
        _check_args(self.args)

    def arg_groups(self):
        return (self.args,)


_KIND = {
    Top: "top",
    Bot: "bot",
    Lit: "lit",
    And: "and",
    Or: "or",
    GOr: "global_or",
    Exists: "exists",
    Forall: "forall",
    NE: "ne",
    Might: "might",
    SMight: "smight",
    EMight: "emight",
    Dep: "dep",
    Anon: "anon",
    Inc: "incl",
    Exc: "excl",
    Indep: "indep",
    RelInc: "rincl",
    RelExc: "rexcl",
    PrimInc: "pincl",
    NonConst: "nonconst",
}


# ---------------------------------------------------------------------------
# generic helpers


def atom_vars(a: Atom) -> set[str]:
    out: set[str] = set()
    for g in a.arg_groups():
        for x in g:
            out |= free_vars(x)
    if isinstance(a, _Rel):
        out |= free_vars(a.alpha) | free_vars(a.beta)
    return out


def free_vars(f: Formula) -> frozenset[str]:
    if isinstance(f, Lit):
        return frozenset((f.var,))
    if isinstance(f, Atom):
        return frozenset(atom_vars(f))
    if isinstance(f, (Exists, Forall)):
        return free_vars(f.body) - {f.var}
    out: frozenset[str] = frozenset()
    for c in f.children():
        out |= free_vars(c)
    return out


def all_vars(f: Formula) -> set[str]:
    """Every variable name occurring in ``f``, bound or free."""
    out: set[str] = set()
    for g in f.walk():
        if isinstance(g, Lit):
            out.add(g.var)
        elif isinstance(g, (Exists, Forall)):
            out.add(g.var)
        elif isinstance(g, Atom):
            out |= atom_vars(g)
    return out


def atoms(f: Formula) -> list[Atom]:
    return [g for g in f.walk() if isinstance(g, Atom)]


def negate(f: Formula) -> Formula:
    """Push a negation down to the literals of a propositional formula."""
    if isinstance(f, Lit):
        return Lit(f.var, not f.pos)
    if isinstance(f, Top):
        return Bot()
    if isinstance(f, Bot):
        return Top()
    if isinstance(f, And):
        return Or(negate(f.left), negate(f.right))
    if isinstance(f, Or):
        return And(negate(f.left), negate(f.right))
    if isinstance(f, Exists):
        return Forall(f.var, negate(f.body))
    if isinstance(f, Forall):
        return Exists(f.var, negate(f.body))
    raise PreconditionError(f"negation is only defined on atom-free formulas, got {f.kind}")


def conj(fs) -> Formula:
    fs = list(fs)
    if not fs:
        return Top()
    out = fs[0]
    for g in fs[1:]:
        out = And(out, g)
    return out


def disj(fs, op=None) -> Formula:
    op = op or Or
    fs = list(fs)
    if not fs:
        return Bot()
    out = fs[0]
    for g in fs[1:]:
        out = op(out, g)
    return out


def eq(p: Formula | str, q: Formula | str) -> Formula:
    """``p = q`` abbreviates ``(p ∧ q) ∨ (¬p ∧ ¬q)``."""
    p, q = as_args((p, q))
    return Or(And(p, q), And(negate(p), negate(q)))


def neq(p: Formula | str, q: Formula | str) -> Formula:
    """``p ≠ q`` abbreviates ``(p ∧ ¬q) ∨ (¬p ∧ q)``."""
    p, q = as_args((p, q))
    return Or(And(p, negate(q)), And(negate(p), q))


def tuple_eq(ps, qs) -> Formula:
    ps, qs = as_args(ps), as_args(qs)
    if len(ps) != len(qs):
        raise PreconditionError("tuple equality needs equal lengths")
    return conj(eq(p, q) for p, q in zip(ps, qs))


def tuple_neq(ps, qs) -> Formula:
    ps, qs = as_args(ps), as_args(qs)
    if len(ps) != len(qs):
        raise PreconditionError("tuple inequality needs equal lengths")
    return disj(neq(p, q) for p, q in zip(ps, qs))


def iff(p: Formula, q: Formula) -> Formula:
    """``p ↔ q`` as ``(p ∧ q) ∨ (¬p ∧ ¬q)`` for propositional ``p`` and ``q``."""
    return Or(And(p, q), And(negate(p), negate(q)))


def substitute(f: Formula, mapping: dict[str, str]) -> Formula:
    """Rename free variables; bound occurrences are left alone."""
    if isinstance(f, Lit):
        return Lit(mapping.get(f.var, f.var), f.pos)
    if isinstance(f, (Top, Bot, NE)):
        return f
    if isinstance(f, (And, Or, GOr)):
        return type(f)(substitute(f.left, mapping), substitute(f.right, mapping))
    if isinstance(f, (Exists, Forall)):
        inner = {k: v for k, v in mapping.items() if k != f.var}
        return type(f)(f.var, substitute(f.body, inner))
    if isinstance(f, (Might, SMight, EMight)):
        return type(f)(substitute(f.body, mapping))

    def sub(g):
        return tuple(substitute(x, mapping) for x in g)

    if isinstance(f, (Dep, Anon)):
        return type(f)(sub(f.args), substitute(f.target, mapping))
    if isinstance(f, (Inc, Exc)):
        return type(f)(sub(f.left), sub(f.right))
    if isinstance(f, Indep):
        return Indep(sub(f.cond), sub(f.left), sub(f.right))
    if isinstance(f, (RelInc, RelExc)):
        return type(f)(sub(f.left), substitute(f.alpha, mapping), sub(f.right), substitute(f.beta, mapping))
    if isinstance(f, PrimInc):
        return PrimInc(f.bits, sub(f.args))
    if isinstance(f, NonConst):
        return NonConst(sub(f.args))
    raise TypeError(type(f))
