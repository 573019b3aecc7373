"""Seeded random formulas and families for the property suites."""
from __future__ import annotations

import random

from .. import formula as F
from ..setfam import SetFamily

OPS = ("and", "or", "exists", "forall")


def random_atom(rng: random.Random, pool, kind: str, max_k: int = 2) -> F.Formula:
    def vs(n):
        # mostly distinct variables: repeated ones tend to trivialise the atom
        if n <= len(pool) and rng.random() < 0.7:
            return tuple(rng.sample(list(pool), n))
        return tuple(rng.choice(pool) for _ in range(n))

    k = rng.choice([0] + [i for i in range(1, max_k + 1) for _ in range(2)])
    if kind == "dep":
        return F.Dep(vs(k), rng.choice(pool))
    if kind == "anon":
        return F.Anon(vs(k), rng.choice(pool))
    if kind == "incl":
        return F.Inc(vs(k), vs(k))
    if kind == "excl":
        return F.Exc(vs(k), vs(k))
    if kind == "indep":
        return F.Indep(vs(rng.randint(0, 1)), vs(max(k, 1)), vs(1))
    if kind == "pincl":
        return F.PrimInc(tuple(rng.random() < 0.5 for _ in range(k)), vs(k))
    if kind == "nonconst":
        return F.NonConst(vs(k))
    raise ValueError(kind)


def random_formula(
    rng: random.Random,
    pool=("p", "q", "r"),
    kinds=("dep", "anon", "incl", "excl"),
    ops=OPS,
    leaves: int = 4,
    atom_rate: float = 0.7,
) -> F.Formula:
    """A formula with at most ``leaves`` leaves."""

    def leaf():
        r = rng.random()
        if kinds and r < atom_rate:
            return random_atom(rng, pool, rng.choice(kinds))
        if r < atom_rate + 0.05:
            return rng.choice([F.Top(), F.Bot()])
        return F.Lit(rng.choice(pool), rng.random() < 0.5)

    def build(n):
        if n <= 1:
            return leaf()
        op = rng.choice(ops)
        if op in ("exists", "forall"):
            cls = F.Exists if op == "exists" else F.Forall
            return cls(rng.choice(pool), build(n))
        cls = {"and": F.And, "or": F.Or, "gor": F.GOr}[op]
        a = rng.randint(1, n - 1)
        return cls(build(a), build(n - a))

    return build(rng.randint(1, leaves))


def random_family(rng: random.Random, base: int, density: float | None = None) -> SetFamily:
    """A nonempty random family over ``base`` elements."""
    p = rng.random() if density is None else density
    members = [s for s in range(1 << base) if rng.random() < p]
    if not members:
        members = [rng.randrange(1 << base)]
    return SetFamily.of(base, members)


def random_closed_family(rng: random.Random, base: int, mode: str) -> SetFamily:
    """Closure of a few random generators: ``down``, ``up``, ``quasi_down`` or ``quasi_up``."""
    full = (1 << base) - 1
    gens = [rng.randrange(1 << base) for _ in range(rng.randint(1, 4))]
    if mode in ("down", "quasi_down"):
        fam = {s for s in range(1 << base) if any(s & ~g == 0 for g in gens)}
        if mode == "quasi_down":
            fam.add(full)
    else:
        fam = {s for s in range(1 << base) if any(g & ~s == 0 for g in gens)}
        if mode == "quasi_up":
            fam.add(0)
    return SetFamily.of(base, fam)
