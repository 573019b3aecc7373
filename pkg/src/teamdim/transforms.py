"""Reduction formulas and translations between atoms.

Atom-level rules take one atom and return an equivalent formula.  They
never simplify: the output has the displayed shape, so equal inputs give
equal outputs up to the choice of fresh variables.  :func:`rewrite` applies
a rule inside a larger formula and records a trail of
:class:`ReductionStep` objects.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable

from .errors import FreshVariableClash, PreconditionError
from .formula import (
    And,
    Anon,
    Atom,
    Dep,
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
    all_vars,
    conj,
    disj,
    eq,
    fragment_profile,
    negate,
    neq,
    render,
    tuple_eq,
    tuple_neq,
)
from .formula.nodes import EMight, SMight


class Fresh:
    """Supply of variable names not occurring in a given set.

    Names are ``_<prefix><i>``.  An explicit list of names can be given
    instead; each is checked against the used set.
    """

    def __init__(self, used: Iterable[str] = (), names: Iterable[str] | None = None):
        self.used = set(used)
        self.names = list(names) if names is not None else None
        self.counter: dict[str, int] = {}

    @classmethod
    def for_formula(cls, f: Formula, names=None) -> "Fresh":
        return cls(all_vars(f), names)

    def take(self, prefix: str) -> str:
        if self.names is not None:
            if not self.names:
                raise PreconditionError("ran out of supplied fresh variables")
            v = self.names.pop(0)
            if v in self.used:
                raise FreshVariableClash(f"fresh variable {v!r} already occurs in the formula")
            self.used.add(v)
            return v
        i = self.counter.get(prefix, 0)
        while True:
            i += 1
            v = f"_{prefix}{i}"
            if v not in self.used:
                break
        self.counter[prefix] = i
        self.used.add(v)
        return v

    def take_many(self, prefix: str, k: int) -> list[str]:
        return [self.take(prefix) for _ in range(k)]


def _fresh(a: Formula, fresh) -> Fresh:
    if isinstance(fresh, Fresh):
        fresh.used |= all_vars(a)
        return fresh
    return Fresh.for_formula(a, fresh)


def _need(cond: bool, msg: str):
    if not cond:
        raise PreconditionError(msg)


def _lits(names) -> tuple[Lit, ...]:
    return tuple(Lit(v) for v in names)


def _signed(p: Formula, positive: bool) -> Formula:
    return p if positive else negate(p)


def _split(last: Formula, pos: Formula, neg: Formula) -> Formula:
    """``(last ∧ pos) ∨ (¬last ∧ neg)``."""
    return Or(And(last, pos), And(negate(last), neg))


# ---------------------------------------------------------------------------
# quantifier-free reductions


def reduce_dep(a: Dep) -> Formula:
    """``=(p̄ p;q) ≡ (p ∧ =(p̄;q)) ∨ (¬p ∧ =(p̄;q))``."""
    _need(isinstance(a, Dep), "reduce_dep needs a dependence atom")
    _need(len(a.args) >= 1, "a constancy atom cannot be reduced further")
    inner = Dep(a.args[:-1], a.target)
    return _split(a.args[-1], inner, inner)


def reduce_anon(a: Anon) -> Formula:
    """``p̄ p Υ q ≡ (p ∧ p̄Υq) ∨ (¬p ∧ p̄Υq)``."""
    _need(isinstance(a, Anon), "reduce_anon needs an anonymity atom")
    _need(len(a.args) >= 1, "a 0-ary anonymity atom cannot be reduced further")
    inner = Anon(a.args[:-1], a.target)
    return _split(a.args[-1], inner, inner)


def reduce_indep_conditional(a: Indep) -> Formula:
    """Drop the last conditioning variable."""
    _need(isinstance(a, Indep), "needs an independence atom")
    _need(len(a.cond) >= 1, "the atom is unconditional")
    inner = Indep(a.cond[:-1], a.left, a.right)
    return _split(a.cond[-1], inner, inner)


def reduce_indep(a: Indep, side: str = "auto") -> Formula:
    """``p̄ p ⊥ q̄ ≡ p ⊥ q̄ ∧ ((p ∧ p̄ ⊥ q̄) ∨ (¬p ∧ p̄ ⊥ q̄))``.

    ``side`` picks the block to shorten; ``auto`` takes the left one when it
    has at least two variables.  The right block is handled through the
    symmetry of independence.  A (1,1) atom is terminal.
    """
    _need(isinstance(a, Indep), "needs an independence atom")
    _need(not a.cond, "conditional atom: use reduce_indep_conditional first")
    if side == "auto":
        side = "left" if len(a.left) >= 2 else "right"
    if side == "left":
        _need(len(a.left) >= 2, "left block has fewer than two variables")
        p = a.left[-1]
        inner = Indep((), a.left[:-1], a.right)
        return And(Indep((), (p,), a.right), _split(p, inner, inner))
    if side == "right":
        _need(len(a.right) >= 2, "no block has two or more variables (terminal atom)")
        q = a.right[-1]
        inner = Indep((), a.left, a.right[:-1])
        return And(Indep((), a.left, (q,)), _split(q, inner, inner))
    raise ValueError(f"unknown side {side!r}")


def reduce_relativized(a: RelInc | RelExc) -> Formula:
    """Move the last coordinate of both sides into the side conditions."""
    _need(isinstance(a, (RelInc, RelExc)), "needs a relativized atom")
    _need(len(a.left) >= 1, "a 0-ary relativized atom cannot be reduced further")
    cls = type(a)
    p, q = a.left[-1], a.right[-1]
    pos = cls(a.left[:-1], And(a.alpha, p), a.right[:-1], And(a.beta, q))
    neg = cls(a.left[:-1], And(a.alpha, negate(p)), a.right[:-1], And(a.beta, negate(q)))
    return And(pos, neg)


def relativized_base(a: RelInc | RelExc) -> Formula:
    """0-ary relativized atoms: ``¬α ∨ ◊β`` and ``¬α ⩒ ¬β``."""
    _need(isinstance(a, (RelInc, RelExc)), "needs a relativized atom")
    _need(len(a.left) == 0, "only 0-ary relativized atoms have a base form")
    if isinstance(a, RelInc):
        return Or(negate(a.alpha), Might(a.beta))
    return GOr(negate(a.alpha), negate(a.beta))


def anon_via_nonconst(a: Anon) -> Formula:
    """``p̄Υq ≡ ⋁_x̄ (p̄^x̄ ∧ ≠(q))``."""
    _need(isinstance(a, Anon), "needs an anonymity atom")
    parts = [
        And(conj(_signed(p, x) for p, x in zip(a.args, xs)), NonConst((a.target,)))
        for xs in product((True, False), repeat=len(a.args))
    ]
    return disj(parts)


def inc_via_primitive(a: Inc) -> Formula:
    """``p̄ ⊆ q̄ ≡ ⋀_x̄ (¬p̄^x̄ ∨ x̄ ⊆ q̄)``."""
    _need(isinstance(a, Inc), "needs an inclusion atom")
    parts = [
        Or(negate(conj(_signed(p, x) for p, x in zip(a.left, xs))), PrimInc(xs, a.right))
        for xs in product((True, False), repeat=len(a.left))
    ]
    return conj(parts)


# ---------------------------------------------------------------------------
# quantified translations


def _exists(vs, body):
    for v in reversed(vs):
        body = Exists(v, body)
    return body


def _forall(vs, body):
    for v in reversed(vs):
        body = Forall(v, body)
    return body


def inc_to_anon(a: Inc, fresh=None) -> Formula:
    """``t̄ ⊆ t̄' ≡ ∀z1∀z2∃p̄∃q(((z1=z2 ∧ p1=q ∧ p̄=t̄) ∨ (z1≠z2 ∧ p̄=t̄')) ∧ p̄Υq)``.

    For 0-ary atoms there is no ``p1``; the literal ``q`` takes the place
    of ``p1=q``.
    """
    _need(isinstance(a, Inc), "needs an inclusion atom")
    fr = _fresh(a, fresh)
    z1, z2 = fr.take("z"), fr.take("z")
    ps = fr.take_many("p", len(a.left))
    q = fr.take("q")
    p_eq_q = eq(ps[0], q) if ps else Lit(q)
    same = And(And(eq(z1, z2), p_eq_q), tuple_eq(ps, a.left))
    diff = And(neq(z1, z2), tuple_eq(ps, a.right))
    body = And(Or(same, diff), Anon(_lits(ps), Lit(q)))
    return _forall([z1, z2], _exists(ps + [q], body))


def anon_to_inc(a: Anon, fresh=None, u: str | None = None) -> Formula:
    """``p̄Υq ≡ ∃u(u≠q ∧ p̄u ⊆ p̄q)``."""
    _need(isinstance(a, Anon), "needs an anonymity atom")
    if u is None:
        u = _fresh(a, fresh).take("u")
    elif u in all_vars(a):
        raise FreshVariableClash(f"fresh variable {u!r} already occurs in the atom")
    return Exists(u, And(neq(u, a.target), Inc(a.args + (Lit(u),), a.args + (a.target,))))


def exc_to_dep(a: Exc, fresh=None) -> Formula:
    """``t̄ | t̄' ≡ ∀p̄∃q(=(p̄;q) ∧ ((q ∧ p̄≠t̄) ∨ (¬q ∧ p̄≠t̄')))``."""
    _need(isinstance(a, Exc), "needs an exclusion atom")
    fr = _fresh(a, fresh)
    ps = fr.take_many("p", len(a.left))
    q = fr.take("q")
    body = And(
        Dep(_lits(ps), Lit(q)),
        Or(And(Lit(q), tuple_neq(ps, a.left)), And(Lit(q, False), tuple_neq(ps, a.right))),
    )
    return _forall(ps, Exists(q, body))


def dep_to_exc(a: Dep, fresh=None, z: str | None = None) -> Formula:
    """``=(p̄;q) ≡ ∀z(z=q ∨ p̄z | p̄q)``."""
    _need(isinstance(a, Dep), "needs a dependence atom")
    if z is None:
        z = _fresh(a, fresh).take("z")
    elif z in all_vars(a):
        raise FreshVariableClash(f"fresh variable {z!r} already occurs in the atom")
    return Forall(z, Or(eq(z, a.target), Exc(a.args + (Lit(z),), a.args + (a.target,))))


def _map_atoms(f: Formula, fn: Callable[[Atom], Formula | None]) -> Formula:
    """Replace every atom for which ``fn`` returns a formula."""
    if isinstance(f, Atom):
        g = fn(f)
        return f if g is None else g
    if isinstance(f, (And, Or, GOr)):
        return type(f)(_map_atoms(f.left, fn), _map_atoms(f.right, fn))
    if isinstance(f, (Exists, Forall)):
        return type(f)(f.var, _map_atoms(f.body, fn))
    if isinstance(f, (Might, SMight, EMight)):
        return type(f)(_map_atoms(f.body, fn))
    return f


def reduce_inc_qpl(a: Inc, fresh=None) -> Formula:
    """A (k+1)-ary inclusion atom as a formula with four k-ary inclusion atoms."""
    _need(isinstance(a, Inc), "needs an inclusion atom")
    _need(len(a.left) >= 2, "reduce_inc_qpl needs arity at least 2")
    fr = _fresh(a, fresh)
    f = inc_to_anon(a, fr)
    f = _map_atoms(f, lambda b: reduce_anon(b) if isinstance(b, Anon) else None)
    f = _map_atoms(f, lambda b: reduce_anon(b) if isinstance(b, Anon) else None)
    u = fr.take("u")
    return _map_atoms(f, lambda b: anon_to_inc(b, u=u) if isinstance(b, Anon) else None)


def reduce_exc_qpl(a: Exc, fresh=None) -> Formula:
    """A (k+1)-ary exclusion atom as a formula with four k-ary exclusion atoms."""
    _need(isinstance(a, Exc), "needs an exclusion atom")
    _need(len(a.left) >= 2, "reduce_exc_qpl needs arity at least 2")
    fr = _fresh(a, fresh)
    f = exc_to_dep(a, fr)
    f = _map_atoms(f, lambda b: reduce_dep(b) if isinstance(b, Dep) else None)
    f = _map_atoms(f, lambda b: reduce_dep(b) if isinstance(b, Dep) else None)
    z = fr.take("z")
    return _map_atoms(f, lambda b: dep_to_exc(b, z=z) if isinstance(b, Dep) else None)


def _replace_args(a: Atom, new):
    """Rebuild ``a`` with its argument groups replaced (same shape)."""
    if isinstance(a, (Dep, Anon)):
        return type(a)(new[0], new[1][0])
    if isinstance(a, (Inc, Exc)):
        return type(a)(new[0], new[1])
    if isinstance(a, Indep):
        return Indep(*new)
    if isinstance(a, (RelInc, RelExc)):
        return type(a)(new[0], a.alpha, new[1], a.beta)
    if isinstance(a, PrimInc):
        return PrimInc(a.bits, new[0])
    if isinstance(a, NonConst):
        return NonConst(new[0])
    raise TypeError(a)


def _groups(a: Atom):
    if isinstance(a, (Dep, Anon)):
        return (a.args, (a.target,))
    if isinstance(a, Indep):
        return (a.cond, a.left, a.right)
    return a.arg_groups()


def eliminate_extended(a: Atom, fresh=None) -> Formula:
    """``φ(α_1…α_m) ≡ ∃q_1…∃q_m(⋀(q_i ↔ α_i) ∧ φ(q_1…q_m))``; plain atoms are returned as is."""
    _need(isinstance(a, Atom), "needs an atom")
    if a.plain:
        return a
    fr = _fresh(a, fresh)
    qs, defs, new = [], [], []
    for g in _groups(a):
        row = []
        for arg in g:
            q = fr.take("q")
            qs.append(q)
            defs.append(Or(And(Lit(q), arg), And(Lit(q, False), negate(arg))))
            row.append(Lit(q))
        new.append(tuple(row))
    return _exists(qs, And(conj(defs), _replace_args(a, new)))


# ---------------------------------------------------------------------------
# rewriting inside formulas


RULES: dict[str, Callable] = {
    "reduce_dep": reduce_dep,
    "reduce_anon": reduce_anon,
    "reduce_indep_conditional": reduce_indep_conditional,
    "reduce_indep": reduce_indep,
    "reduce_relativized": reduce_relativized,
    "relativized_base": relativized_base,
    "anon_via_nonconst": anon_via_nonconst,
    "inc_via_primitive": inc_via_primitive,
    "inc_to_anon": inc_to_anon,
    "anon_to_inc": anon_to_inc,
    "exc_to_dep": exc_to_dep,
    "dep_to_exc": dep_to_exc,
    "reduce_inc_qpl": reduce_inc_qpl,
    "reduce_exc_qpl": reduce_exc_qpl,
    "eliminate_extended": eliminate_extended,
}
_USES_FRESH = {
    "inc_to_anon", "anon_to_inc", "exc_to_dep", "dep_to_exc",
    "reduce_inc_qpl", "reduce_exc_qpl", "eliminate_extended",
}


def _max_arity(f: Formula) -> int:
    best = 0
    for ar in fragment_profile(f).max_arity.values():
        best = max(best, max(ar) if isinstance(ar, tuple) else ar)
    return best


@dataclass(frozen=True)
class ReductionStep:
    input: Formula
    output: Formula
    rule: str
    atom_delta: int
    arity_delta: int

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "input": render(self.input),
            "output": render(self.output),
            "atom_delta": self.atom_delta,
            "arity_delta": self.arity_delta,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), ensure_ascii=False)


def _step(before: Formula, after: Formula, rule: str) -> ReductionStep:
    pb, pa = fragment_profile(before), fragment_profile(after)
    return ReductionStep(
        before, after, rule, pa.atom_count - pb.atom_count, _max_arity(after) - _max_arity(before)
    )


def _apply_first(f: Formula, fn) -> tuple[Formula, bool]:
    """Rewrite the leftmost atom on which ``fn`` succeeds."""
    if isinstance(f, Atom):
        try:
            return fn(f), True
        except PreconditionError:
            return f, False
    if isinstance(f, (And, Or, GOr)):
        left, done = _apply_first(f.left, fn)
        if done:
            return type(f)(left, f.right), True
        right, done = _apply_first(f.right, fn)
        return (type(f)(f.left, right), True) if done else (f, False)
    if isinstance(f, (Exists, Forall)):
        body, done = _apply_first(f.body, fn)
        return (type(f)(f.var, body), True) if done else (f, False)
    if isinstance(f, (Might, SMight, EMight)):
        body, done = _apply_first(f.body, fn)
        return (type(f)(body), True) if done else (f, False)
    return f, False


def rewrite(f: Formula, rule: str, *, repeat: bool = False, limit: int = 10_000):
    """Apply ``rule`` to the leftmost applicable atom (or until none is left).

    Returns the final formula and the list of steps.  Rules that only
    rewrite a form into itself (the identity on plain extended-free atoms)
    are not counted as progress.
    """
    if rule not in RULES:
        raise PreconditionError(f"unknown rule {rule!r}; choose from {sorted(RULES)}")
    fn = RULES[rule]
    fr = Fresh.for_formula(f)
    if rule in _USES_FRESH:
        base = fn

        def fn(a):
            if rule == "eliminate_extended" and a.plain:
                raise PreconditionError("plain atom")
            return base(a, fr)

    steps = []
    cur = f
    while True:
        new, done = _apply_first(cur, fn)
        if not done:
            break
        steps.append(_step(cur, new, rule))
        cur = new
        if not repeat or len(steps) >= limit:
            break
    return cur, steps


def terminal_indep(a: Indep) -> bool:
    """Independence atoms that no rule shortens: unconditional with both blocks ≤ 1."""
    return not a.cond and len(a.left) <= 1 and len(a.right) <= 1


__all__ = [
    "Fresh", "ReductionStep", "RULES", "rewrite", "terminal_indep",
    "reduce_dep", "reduce_anon", "reduce_indep_conditional", "reduce_indep",
    "reduce_relativized", "relativized_base", "anon_via_nonconst",
    "inc_via_primitive", "inc_to_anon", "anon_to_inc", "exc_to_dep",
    "dep_to_exc", "reduce_inc_qpl", "reduce_exc_qpl", "eliminate_extended",
]
