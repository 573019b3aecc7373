"""Brute-force reference implementations used as test oracles.

Everything here works straight from the definitions on Python sets of
ints and deliberately shares no code with the package.
"""
from itertools import combinations, product

import hypothesis.strategies as st


def subsets(A):
    bs = [1 << i for i in range(A.bit_length()) if A >> i & 1]
    for r in range(len(bs) + 1):
        for c in combinations(bs, r):
            yield sum(c)


def between(A, B):
    if A & ~B:
        return set()
    return {A | s for s in subsets(B & ~A)}


def shadow(F, A, n, dual=False):
    full = (1 << n) - 1
    if dual:
        return {B for B in between(A, full) if between(A, B) <= F}
    return {B for B in subsets(A) if between(B, A) <= F}


def crit(F, n, dual=False):
    sh = {A: frozenset(shadow(F, A, n, dual)) for A in F}
    return {A for A in F if not any(sh[A] < sh[C] for C in F)}


def dim(F, n, dual=False):
    F = set(F)
    sh = {A: shadow(F, A, n, dual) for A in F}
    mem = sorted(F)
    for k in range(1, len(mem) + 1):
        for c in combinations(mem, k):
            if set().union(*(sh[A] for A in c)) == F:
                return k
    raise AssertionError


def intervals_inside(F, n):
    return [(A, B) for A in F for B in F if not A & ~B and between(A, B) <= F]


def cyl_dim(F, n):
    F = set(F)
    ivs = intervals_inside(F, n)
    maxi = [
        (A, B)
        for A, B in ivs
        if not any((A2, B2) != (A, B) and not A2 & ~A and not B & ~B2 for A2, B2 in ivs)
    ]
    for k in range(1, len(maxi) + 1):
        for c in combinations(maxi, k):
            if set().union(*(between(A, B) for A, B in c)) == F:
                return k
    raise AssertionError


def union_span(G):
    acc = {0}
    for g in G:
        acc |= {a | g for a in acc}
    return acc


def union_dim(F):
    F = set(F)
    mem = sorted(F)
    for k in range(0, len(mem) + 1):
        for c in combinations(mem, k):
            if union_span(c) == F:
                return k, c
    return None


def is_down(F, n):
    return 0 in F and all(B in F for A in F for B in subsets(A))


def is_up(F, n):
    full = (1 << n) - 1
    return full in F and all(B in F for A in F for B in between(A, full))


def is_convex(F, n):
    return all(between(A, B) <= F for A in F for B in F)


def is_union_closed(F):
    # the empty subfamily contributes the empty union
    return 0 in F and all(A | B in F for A in F for B in F)


def is_inter_closed(F, n):
    full = (1 << n) - 1
    return full in F and all(A & B in F for A in F for B in F)


def weak_quasi_down(F, n):
    full = (1 << n) - 1
    return full in F and is_down(F - {full}, n)


def weak_quasi_up(F, n):
    return 0 in F and is_up(F - {0}, n)


def maximal(F):
    return {A for A in F if not any(A != B and not A & ~B for B in F)}


def minimal(F):
    return {A for A in F if not any(A != B and not B & ~A for B in F)}


def cover(rows, ncols):
    for k in range(ncols + 1):
        for c in combinations(range(ncols), k):
            m = sum(1 << x for x in c)
            if all(r & m for r in rows):
                return k
    return None


# ---------------------------------------------------------------------------
# team semantics straight from the clauses


def all_evals(n):
    return list(product((0, 1), repeat=n))


# An assignment is a frozenset of (variable, value) pairs so teams can be sets.


def assign(scope, bits):
    return frozenset(zip(scope, (bool(b) for b in bits)))


def team_of(scope, code):
    """Team over ``scope`` from a code (bit e = evaluation e, first variable MSB)."""
    n = len(scope)
    return frozenset(
        assign(scope, [(e >> (n - 1 - j)) & 1 for j in range(n)])
        for e in range(1 << n) if code >> e & 1
    )


def _val(f, s):
    d = dict(s)
    name = type(f).__name__
    if name == "Lit":
        return d[f.var] == f.pos
    if name == "Top":
        return True
    if name == "Bot":
        return False
    if name == "And":
        return _val(f.left, s) and _val(f.right, s)
    if name == "Or":
        return _val(f.left, s) or _val(f.right, s)
    raise TypeError(name)


def _tup(args, s):
    return tuple(_val(a, s) for a in args)


def _splits(T):
    """All (S, S') with S ∪ S' = T."""
    T = list(T)
    for choice in product((0, 1, 2), repeat=len(T)):
        yield (
            frozenset(t for t, c in zip(T, choice) if c != 1),
            frozenset(t for t, c in zip(T, choice) if c != 0),
        )


def _set(s, v, b):
    return frozenset((x, y) for x, y in s if x != v) | {(v, b)}


def _nonempty_subteams(T):
    T = list(T)
    for r in range(1, len(T) + 1):
        for c in combinations(T, r):
            yield frozenset(c)


def brute_atom(a, T):
    name = type(a).__name__
    if name == "Dep":
        return all(
            _val(a.target, s) == _val(a.target, t)
            for s in T for t in T if _tup(a.args, s) == _tup(a.args, t)
        )
    if name == "Anon":
        return all(
            any(_tup(a.args, s) == _tup(a.args, t) and _val(a.target, s) != _val(a.target, t) for t in T)
            for s in T
        )
    if name == "Inc":
        return all(any(_tup(a.left, s) == _tup(a.right, t) for t in T) for s in T)
    if name == "Exc":
        return all(_tup(a.left, s) != _tup(a.right, t) for s in T for t in T)
    if name == "RelInc":
        return all(
            any(_val(a.beta, t) and _tup(a.left, s) == _tup(a.right, t) for t in T)
            for s in T if _val(a.alpha, s)
        )
    if name == "RelExc":
        return all(
            _tup(a.left, s) != _tup(a.right, t)
            for s in T for t in T if _val(a.alpha, s) and _val(a.beta, t)
        )
    if name == "Indep":
        return all(
            any(
                _tup(a.cond, u) == _tup(a.cond, s)
                and _tup(a.left, u) == _tup(a.left, s)
                and _tup(a.right, u) == _tup(a.right, t)
                for u in T
            )
            for s in T for t in T if _tup(a.cond, s) == _tup(a.cond, t)
        )
    if name == "PrimInc":
        return not T or any(_tup(a.args, s) == a.bits for s in T)
    if name == "NonConst":
        return not T or any(_tup(a.args, s) != _tup(a.args, t) for s in T for t in T)
    raise TypeError(name)


def brute_sat(f, T):
    """``T ⊨ f`` by the semantic clauses, enumerating splits and supplements."""
    name = type(f).__name__
    if name in ("Lit", "Top", "Bot"):
        return all(_val(f, s) for s in T)
    if name == "And":
        return brute_sat(f.left, T) and brute_sat(f.right, T)
    if name == "GOr":
        return brute_sat(f.left, T) or brute_sat(f.right, T)
    if name == "Or":
        return any(brute_sat(f.left, S) and brute_sat(f.right, R) for S, R in _splits(T))
    if name == "Forall":
        return brute_sat(f.body, frozenset(_set(s, f.var, b) for s in T for b in (False, True)))
    if name == "Exists":
        T = list(T)
        for choice in product(((False,), (True,), (False, True)), repeat=len(T)):
            U = frozenset(_set(s, f.var, b) for s, bs in zip(T, choice) for b in bs)
            if brute_sat(f.body, U):
                return True
        return False
    if name == "NE":
        return bool(T)
    if name == "Might":
        return not T or any(brute_sat(f.body, S) for S in _nonempty_subteams(T))
    if name == "EMight":
        return bool(T) and any(brute_sat(f.body, S) for S in _nonempty_subteams(T))
    if name == "SMight":
        return not T or any(brute_sat(f.body, frozenset([s])) for s in T)
    return brute_atom(f, T)



@st.composite
def families(draw, min_base=1, max_base=5, min_size=1):
    n = draw(st.integers(min_base, max_base))
    members = draw(st.sets(st.integers(0, (1 << n) - 1), min_size=min_size, max_size=1 << n))
    return n, members


ATOM_KINDS = ("dep", "anon", "incl", "excl", "indep", "rincl", "rexcl", "pincl", "nonconst")
OPS = ("and", "or", "gor", "exists", "forall", "might", "smight", "emight", "ne")


@st.composite
def atoms_st(draw, pool=("p", "q", "r"), kinds=ATOM_KINDS):
    from teamdim import formula as F

    kind = draw(st.sampled_from(kinds))
    var = st.sampled_from(pool)

    def vs(n):
        return tuple(draw(var) for _ in range(n))

    k = draw(st.integers(0, 2))
    if kind == "dep":
        return F.Dep(vs(k), draw(var))
    if kind == "anon":
        return F.Anon(vs(k), draw(var))
    if kind == "incl":
        return F.Inc(vs(k), vs(k))
    if kind == "excl":
        return F.Exc(vs(k), vs(k))
    if kind == "indep":
        return F.Indep(vs(draw(st.integers(0, 1))), vs(max(k, 1)), vs(1))
    if kind in ("rincl", "rexcl"):
        lit = st.builds(F.Lit, var, st.booleans()) | st.just(F.Top())
        cls = F.RelInc if kind == "rincl" else F.RelExc
        return cls(vs(k), draw(lit), vs(k), draw(lit))
    if kind == "pincl":
        return F.PrimInc(tuple(draw(st.booleans()) for _ in range(k)), vs(k))
    return F.NonConst(vs(k))


def formulas(pool=("p", "q", "r"), kinds=ATOM_KINDS, ops=OPS, max_leaves=6):
    from teamdim import formula as F

    var = st.sampled_from(pool)
    leaves = st.builds(F.Lit, var, st.booleans()) | st.sampled_from([F.Top(), F.Bot()])
    if kinds:
        leaves = leaves | atoms_st(pool, kinds)
    if "ne" in ops:
        leaves = leaves | st.just(F.NE())

    def extend(sub):
        opts = []
        table = {
            "and": lambda: st.builds(F.And, sub, sub),
            "or": lambda: st.builds(F.Or, sub, sub),
            "gor": lambda: st.builds(F.GOr, sub, sub),
            "exists": lambda: st.builds(F.Exists, var, sub),
            "forall": lambda: st.builds(F.Forall, var, sub),
            "might": lambda: st.builds(F.Might, sub),
            "smight": lambda: st.builds(F.SMight, sub),
            "emight": lambda: st.builds(F.EMight, sub),
        }
        for op in ops:
            if op in table:
                opts.append(table[op]())
        return st.one_of(opts)

    return st.recursive(leaves, extend, max_leaves=max_leaves)
