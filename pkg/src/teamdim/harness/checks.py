"""Verification operations: dimension values, bounds, gaps and closure probes."""
from __future__ import annotations

import itertools
import math
import time
from functools import lru_cache

import numpy as np

from ..dimension import compute_dimension
from ..errors import PreconditionError
from ..formula import (
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
    Inc,
    Lit,
    Might,
    NonConst,
    Or,
    PrimInc,
    SMight,
    Top,
    conj,
    disj,
    fragment_profile,
    free_vars,
    negate,
)
from ..semantics import natural_scope, team_property
from ..semantics.atoms import pl_values
from .records import AtomSpec, VerificationRecord, compare


def dim(f: Formula, scope=None, kind: str = "upper") -> int:
    """Dimension of ``‖f‖`` over ``scope`` (default: the free variables)."""
    scope = natural_scope(free_vars(f)).vars if scope is None else tuple(scope)
    return _dim(f, scope, kind)


@lru_cache(maxsize=512)
def _dim(f: Formula, scope: tuple[str, ...], kind: str) -> int:
    return compute_dimension(team_property(f, scope).family, kind).value


def _record(claim, params, computed, target, relation, t0, note="") -> VerificationRecord:
    ok = None if relation == "report" else compare(computed, target, relation)
    return VerificationRecord(claim, params, computed, target, relation, ok, time.perf_counter() - t0, note)


# ---------------------------------------------------------------------------
# atoms


def atom_dimension(spec: AtomSpec, extra: tuple[str, ...] = ()) -> VerificationRecord:
    """Brute-force D of a single atom against its closed form."""
    t0 = time.perf_counter()
    target = spec.closed_form()
    if target is None:
        raise PreconditionError(f"no closed form for {spec.kind}")
    scope = spec.variables() + tuple(extra)
    params = {"kind": spec.kind, "k": spec.k}
    if spec.m is not None:
        params["m"] = spec.m
    if extra:
        params["extra"] = list(extra)
    return _record("atom_dim", params, dim(spec.formula(), scope), target, "=", t0)


def flat_dimension(f: Formula) -> VerificationRecord:
    t0 = time.perf_counter()
    return _record("flat_dim", {"formula": str(f)}, dim(f), 1, "=", t0)


# ---------------------------------------------------------------------------
# dual upper dimension of (quasi) upward closed properties


def _ps(n):
    return tuple(f"p{i}" for i in range(1, n + 1))


def might_readings(n: int) -> tuple[int, float]:
    """The binomial reading and the printed reading of the might bound."""
    half = 2 ** (n - 1)
    binom = math.comb(2 ** n, half) + 1
    printed = 2 ** n / (math.factorial(half) * math.factorial(2 ** n - half)) + 1
    return binom, printed


def dual_dimension_suite(n: int) -> list[VerificationRecord]:
    if not 1 <= n <= 3:
        raise PreconditionError("the dual suite runs for 1 <= n <= 3")
    ps = _ps(n)
    bits = tuple(i % 2 == 0 for i in range(n))
    some = disj(Lit(p) for p in ps)
    out = []

    def add(claim, f, target, relation, kind="dual_upper", note=""):
        t0 = time.perf_counter()
        out.append(_record(claim, {"n": n, "formula": str(f)}, dim(f, ps, kind), target, relation, t0, note))

    pairs = 2 ** n * (2 ** n - 1) // 2
    add("nonconst_dual", NonConst(ps), pairs + 1, "=")
    add("pincl_dual", PrimInc(bits, ps), 2, "=")
    add("ext_pincl_dual", PrimInc((True,), (some,)), 2 ** n, "<=")
    add("smight_dual", SMight(some), 2 ** n, "<=")
    add("ne_dual", NE(), 2 ** n, "=")
    add("nonconst_ne_dual", And(NonConst(ps), NE()), pairs, "=")
    add("pincl_ne_dual", And(PrimInc(bits, ps), NE()), 1, "=")
    add("ext_pincl_ne_dual", And(PrimInc((True,), (some,)), NE()), 2 ** n, "<=")
    add("smight_ne_dual", And(SMight(some), NE()), 2 ** n, "<=")

    binom, printed = might_readings(n)
    for phi in (Lit("p1"), NonConst(ps)):
        for f, extra in ((Might(phi), 0), (EMight(phi), 1)):
            t0 = time.perf_counter()
            v = dim(f, ps, "dual_upper")
            note = (
                f"binomial reading {binom - extra}: {'within' if v <= binom - extra else 'exceeded'}; "
                f"printed reading {printed - extra:.6g}: {'within' if v <= printed - extra else 'exceeded'}"
            )
            out.append(_record("might_dual", {"n": n, "formula": str(f)}, v, binom - extra, "report", t0, note))

    for f in (NonConst(ps), PrimInc(bits, ps), SMight(some), Might(some)):
        add("quasi_upward_upper", f, 2, "=", kind="upper")
    for f in (Dep(ps[:-1], ps[-1]), Exc(ps[:1], ps[-1:]), Lit("p1")):
        add("downward_dual", f, 1, "=")
    return out


# ---------------------------------------------------------------------------
# extended atoms


def _pl_scope(args) -> tuple[str, ...]:
    vs = set()
    for a in args:
        vs |= free_vars(a)
    return natural_scope(vs).vars


def genfd_parameters(theta: Dep | Anon) -> tuple[list[tuple[int, ...]], int]:
    """The set A of impossible-or-forced argument tuples and ``m = 2^k - |A|``."""
    args = tuple(theta.args) + (theta.target,)
    names = _pl_scope(args)
    vals = [pl_values(a, names) for a in args]
    k = len(theta.args)
    A = []
    for xs in itertools.product((0, 1), repeat=k):
        mask = np.ones(1 << len(names), dtype=bool)
        for v, x in zip(vals, xs):
            mask &= v if x else ~v
        if not (mask & vals[-1]).any() or not (mask & ~vals[-1]).any():
            A.append(xs)
    return A, 2 ** k - len(A)


def extended_atom_dimension(theta: Dep | Anon) -> VerificationRecord:
    if not isinstance(theta, (Dep, Anon)):
        raise PreconditionError("expected an extended dependence or anonymity atom")
    t0 = time.perf_counter()
    A, m = genfd_parameters(theta)
    names = _pl_scope(tuple(theta.args) + (theta.target,))
    return _record(
        "ext_atom_dim", {"formula": str(theta), "A": [list(a) for a in A], "m": m},
        dim(theta, names), 2 ** m, "=", t0,
    )


def exclusion_B(theta: Exc) -> list[frozenset]:
    """The family B of maximal realisable parts of the sets ``P × (P complement)``."""
    args = tuple(theta.left) + tuple(theta.right)
    names = _pl_scope(args)
    k = len(theta.left)
    vals = [pl_values(a, names) for a in args]
    cube = list(itertools.product((0, 1), repeat=k))

    def possible(xy):
        mask = np.ones(1 << len(names), dtype=bool)
        for v, x in zip(vals, xy):
            mask &= v if x else ~v
        return bool(mask.any())

    cands = set()
    for r in range(1, len(cube)):
        for P in itertools.combinations(cube, r):
            rest = [y for y in cube if y not in P]
            cands.add(frozenset(x + y for x in P for y in rest if possible(x + y)))
    return [D for D in cands if not any(D < E for E in cands)]


def extended_exclusion_dimension(theta: Exc) -> VerificationRecord:
    if not isinstance(theta, Exc):
        raise PreconditionError("expected an extended exclusion atom")
    t0 = time.perf_counter()
    B = exclusion_B(theta)
    names = _pl_scope(tuple(theta.left) + tuple(theta.right))
    return _record(
        "ext_excl_dim", {"formula": str(theta), "B": sorted(sorted(D) for D in B)},
        dim(theta, names), len(B), "=", t0,
    )


def negated_tuple_inclusion(k: int) -> VerificationRecord:
    if not 1 <= k <= 2:
        raise PreconditionError("negated tuple inclusion runs for k in {1, 2}")
    t0 = time.perf_counter()
    ps = _ps(k)
    xs = tuple(i % 2 == 0 for i in range(k))
    left = tuple(Lit(p, x) for p, x in zip(ps, xs))
    f = Inc(left, tuple(negate(a) for a in left))
    return _record("negated_tuple_incl", {"k": k, "formula": str(f)}, dim(f, ps), 2 ** 2 ** (k - 1), "=", t0)


# ---------------------------------------------------------------------------
# bounds


def kripke_bound_check(f: Formula, g: Formula | None, connective: str, var: str | None = None) -> VerificationRecord:
    """``D(f ∘ g) <= D(f)·D(g)`` for ∧, ∨ and ``D(Qv f) <= D(f)`` for ∃, ∀."""
    t0 = time.perf_counter()
    if connective in ("and", "or"):
        if g is None:
            raise PreconditionError("binary connective needs two formulas")
        h = (And if connective == "and" else Or)(f, g)
        scope = natural_scope(free_vars(f) | free_vars(g)).vars
        bound = dim(f, scope) * dim(g, scope)
    elif connective in ("exists", "forall"):
        if var is None:
            raise PreconditionError("quantifier needs a variable")
        h = (Exists if connective == "exists" else Forall)(var, f)
        scope = natural_scope(free_vars(f) | {var}).vars
        bound = dim(f, scope)
    else:
        raise PreconditionError(f"unknown connective {connective!r}")
    return _record("kripke", {"connective": connective, "formula": str(h)}, dim(h, scope), bound, "<=", t0)


ARITYDIM_KINDS = ("dep", "excl", "incl", "pincl", "anon")


@lru_cache(maxsize=None)
def atom_dim(kind: str, k: int) -> int:
    """D of one k-ary atom over fresh variables (computed, not the closed form)."""
    spec = AtomSpec(kind, k)
    return dim(spec.formula(), spec.variables())


def aritydim_check(f: Formula, scope=None) -> VerificationRecord:
    t0 = time.perf_counter()
    prof = fragment_profile(f)
    kinds = prof.kinds()
    if "indep" in kinds:
        raise PreconditionError("no arity bound is available for independence atoms")
    if len(kinds) > 1 or not kinds <= set(ARITYDIM_KINDS):
        raise PreconditionError(f"expected a single atom kind from {ARITYDIM_KINDS}, got {sorted(kinds)}")
    scope = natural_scope(free_vars(f)).vars if scope is None else tuple(scope)
    if not kinds:
        bound, kind, k, n = 1, None, 0, 0
    else:
        (kind,) = kinds
        k, n = prof.max_arity[kind], prof.occurrences(kind)
        bound = atom_dim(kind, k) ** n
    return _record("aritydim", {"formula": str(f), "kind": kind, "k": k, "n": n}, dim(f, scope), bound, "<=", t0)


# ---------------------------------------------------------------------------
# inexpressibility gaps

GAP_THEOREMS = ("opti_ii", "opti_iv", "collapse_ii", "opti_inc_exc_i", "opti_inc_exc_ii")
GAP_KINDS = {
    "opti_ii": ("dep", "anon"),
    "opti_iv": ("dep", "anon"),
    "collapse_ii": ("incl",),
    "opti_inc_exc_i": ("incl", "excl"),
    "opti_inc_exc_ii": ("incl", "excl"),
}


def _d(kind: str, k: int) -> int:
    return AtomSpec(kind, k).closed_form()


def gap_values(theorem: str, kind: str, k: int, n: int, m: int) -> tuple[int, int]:
    """(witness dimension claimed by the proof, upper bound for the smaller fragment)."""
    if theorem == "opti_ii":
        return _d(kind, k + 1) ** n, _d(kind, k) ** m
    if theorem == "opti_iv":
        return _d(kind, k) ** n, _d(kind, 0) ** m
    if theorem == "collapse_ii":
        return _d("incl", k), 2 ** m
    if theorem == "opti_inc_exc_i":
        return _d(kind, 2) ** n, _d(kind, 1) ** m
    if theorem == "opti_inc_exc_ii":
        return _d(kind, k + 1) ** n, _d(kind, k) ** m
    raise PreconditionError(f"unknown theorem {theorem!r}")


def _check_hypotheses(theorem, kind, k, n, m):
    if kind not in GAP_KINDS.get(theorem, ()):
        raise PreconditionError(f"{theorem} is not stated for {kind}")
    ok = {
        "opti_ii": k >= 0 and 0 < n <= m < 2 * n,
        "opti_iv": k >= 0 and 0 < n <= m < n * 2 ** k,
        "collapse_ii": k >= 2 and n == 1 and 0 <= m < 2 ** k,
        "opti_inc_exc_i": k == 1 and 0 < n <= m < 4 * n,
        "opti_inc_exc_ii": k >= 2 and 0 < n <= m < 3 * n,
    }[theorem]
    if not ok:
        raise PreconditionError(f"parameters k={k}, n={n}, m={m} are outside the hypotheses of {theorem}")


def gap_witness(theorem: str, kind: str, k: int, n: int) -> Formula:
    """The proof's witness: n copies of the larger atom on disjoint variables."""
    arity = {"opti_ii": k + 1, "opti_iv": k, "collapse_ii": k, "opti_inc_exc_i": 2, "opti_inc_exc_ii": k + 1}[theorem]
    parts = []
    for i in range(1, n + 1):
        ps = tuple(f"p{i}_{j}" for j in range(1, arity + 1))
        if kind in ("dep", "anon"):
            parts.append((Dep if kind == "dep" else Anon)(ps, f"q{i}"))
        else:
            qs = tuple(f"q{i}_{j}" for j in range(1, arity + 1))
            parts.append((Inc if kind == "incl" else Exc)(ps, qs))
    return conj(parts)


def witness_fits(theorem: str, kind: str, k: int, n: int, cap: int | None = None) -> bool:
    from ..config import max_scope

    cap = max_scope() if cap is None else cap
    return len(free_vars(gap_witness(theorem, kind, k, n))) <= cap


def inexpressibility_gap(theorem: str, kind: str, k: int, n: int, m: int, brute: bool = True) -> VerificationRecord:
    """Strict gap ``bound < witness`` plus, where it fits, the witness's brute-force D."""
    t0 = time.perf_counter()
    _check_hypotheses(theorem, kind, k, n, m)
    witness, bound = gap_values(theorem, kind, k, n, m)
    params = {"theorem": theorem, "kind": kind, "k": k, "n": n, "m": m}
    rec = _record("gap", params, bound, witness, "<", t0)
    if brute and witness_fits(theorem, kind, k, n):
        w = dim(gap_witness(theorem, kind, k, n))
        rec.note = f"brute-force witness D = {w}"
        if w != witness:
            rec.passed = False
            holds = "holds" if bound < w else "fails"
            rec.note += f" differs from the claimed {witness}; against it the gap {holds}"
        rec.runtime = time.perf_counter() - t0
    return rec


def gap_parameters(theorem: str, kind: str, limit: int = 10 ** 6):
    """All (k, n, m) inside the hypotheses whose witness dimension is at most ``limit``."""
    kmin = {"opti_ii": 0, "opti_iv": 1, "collapse_ii": 2, "opti_inc_exc_i": 1, "opti_inc_exc_ii": 2}[theorem]
    k = kmin
    while gap_values(theorem, kind, k, 1, 1)[0] <= limit:
        n = 1
        while gap_values(theorem, kind, k, n, n)[0] <= limit:
            if theorem == "collapse_ii":
                ms = range(0, 2 ** k)
            else:
                hi = {"opti_ii": 2 * n, "opti_iv": n * 2 ** k, "opti_inc_exc_i": 4 * n, "opti_inc_exc_ii": 3 * n}[theorem]
                ms = range(n, hi)
            for m in ms:
                yield k, n, m
            if theorem == "collapse_ii":
                break
            n += 1
        if theorem == "opti_inc_exc_i":
            break
        k += 1


# ---------------------------------------------------------------------------
# closure probes for the logics PL(|) and PL(⊆)

_PROBE_ATOM = {"PL_exc": Exc, "PL_inc": Inc}


def in_probe_fragment(logic: str, f: Formula) -> bool:
    atom = _PROBE_ATOM[logic]
    for g in f.walk():
        if isinstance(g, (Lit, Top, Bot, And, Or)):
            continue
        if isinstance(g, atom) and g.plain:
            continue
        return False
    return True


def exc_probe_holds(f: Formula, p: str = "p") -> bool:
    """{s1} ⊨ f and {s2} ⊨ f imply {s1, s2} ⊨ f, with s1 all-zero and s2 setting only p."""
    scope = natural_scope(free_vars(f) | {p})
    ind = team_property(f, scope.vars).family.indicator
    s1 = 0
    s2 = 1 << (scope.n - 1 - scope.vars.index(p))
    a, b = 1 << s1, 1 << s2
    return not (ind[a] and ind[b]) or bool(ind[a | b])


def inc_probe_holds(f: Formula) -> bool:
    """T ∋ s1 and T ⊨ f imply {s1} ⊨ f, with s1 the all-zero evaluation."""
    scope = natural_scope(free_vars(f) | {"p"})
    ind = team_property(f, scope.vars).family.indicator
    return bool(ind[1]) or not ind[1::2].any()


def closure_probe(logic: str, f: Formula, p: str = "p") -> VerificationRecord:
    if logic not in _PROBE_ATOM:
        raise PreconditionError(f"unknown logic {logic!r}")
    if not in_probe_fragment(logic, f):
        raise PreconditionError(f"{f} is not in {logic}")
    t0 = time.perf_counter()
    ok = exc_probe_holds(f, p) if logic == "PL_exc" else inc_probe_holds(f)
    return _record("closure_probe", {"logic": logic, "formula": str(f)}, int(ok), 1, "=", t0)
