"""Data-driven registry of claims and the verification suites built from it."""
from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..dimension import compute_dimension, exact_dimension
from ..errors import CapExceeded
from ..formula import Dep, Top, free_vars, parse
from ..semantics import Engine, Scope, Team, restrict, satisfies, team_property
from ..setfam import closure_profile, critical_sets, extremal_sets
from . import checks
from .randgen import random_closed_family, random_family, random_formula
from .records import AtomSpec, VerificationRecord

SUITES = ("atoms", "dual", "bounds", "gaps", "probes")
DEFAULT_SEED = 20240601
DEFAULT_SAMPLES = 500


@dataclass(frozen=True)
class Claim:
    id: str
    suite: str
    run: Callable[..., list[VerificationRecord]]
    params: dict = field(default_factory=dict)
    randomized: bool = False

    def __call__(self, seed: int, samples: int) -> list[VerificationRecord]:
        kw = dict(self.params)
        if self.randomized:
            kw.update(seed=seed, samples=samples)
        return self.run(**kw)


REGISTRY: list[Claim] = []


def claim(id: str, suite: str, randomized: bool = False, **params):
    def deco(fn):
        REGISTRY.append(Claim(id, suite, fn, params, randomized))
        return fn

    return deco


# ---------------------------------------------------------------------------
# atoms


def _atom_table() -> list[VerificationRecord]:
    out = []
    for kind in ("dep", "anon", "incl", "excl"):
        for k in (0, 1, 2):
            out.append(checks.atom_dimension(AtomSpec(kind, k)))
    out.append(checks.atom_dimension(AtomSpec("indep", 1, 1)))
    return out


claim("atom_dimension_table", "atoms")(_atom_table)


@claim("atom_dimension_locality", "atoms")
def _atom_locality():
    # unused variables leave the dimension unchanged
    return [checks.atom_dimension(AtomSpec(kind, 1), extra=("r",)) for kind in ("dep", "anon", "incl", "excl")]


@claim("flat_dimension", "atoms")
def _flat():
    return [checks.flat_dimension(parse(s)) for s in ("p /\\ q", "E p.(p \\/ q)", "~p \\/ (q /\\ r)")]


@claim("extended_atoms", "atoms")
def _extended():
    out = [
        checks.extended_atom_dimension(parse(s))
        for s in ("dep((p /\\ ~p); q)", "dep(p; (q \\/ ~q))", "dep(p; q)", "anon((p \\/ r); q)",
                  "dep((p /\\ q) r; s)", "anon(p; (q /\\ ~q))")
    ]
    out += [
        checks.extended_exclusion_dimension(parse(s))
        for s in ("excl(p, (q /\\ ~q))", "excl(p, q)", "excl((p /\\ q), r)", "excl(p, (p \\/ q))")
    ]
    out += [checks.negated_tuple_inclusion(k) for k in (1, 2)]
    return out


# ---------------------------------------------------------------------------
# dual


@claim("dual_dimension_suite", "dual")
def _dual():
    return [r for n in (1, 2, 3) for r in checks.dual_dimension_suite(n)]


# ---------------------------------------------------------------------------
# bounds


@claim("kripke_examples", "bounds")
def _kripke_examples():
    d = parse("dep(p; q)")
    return [
        checks.kripke_bound_check(d, d, "and"),
        checks.kripke_bound_check(d, parse("dep(q; p)"), "or"),
        checks.kripke_bound_check(d, None, "exists", "q"),
        checks.kripke_bound_check(d, None, "forall", "p"),
        checks.kripke_bound_check(Top(), Top(), "and"),
    ]


@claim("aritydim_examples", "bounds")
def _aritydim_examples():
    return [
        checks.aritydim_check(parse(s))
        for s in ("dep(p; q) /\\ dep(r; s)", "p /\\ ~q", "anon(p; q) \\/ anon(p; q)", "incl(p, q) /\\ incl(q, p)",
                  "excl(p q, r s)", "pincl(1 0, p q) \\/ pincl(0 0, p q)")
    ]


def _violations(claim_id, params, checked, bad, t0, note=""):
    rec = VerificationRecord(
        claim_id, params, len(bad), 0, "=", not bad, time.perf_counter() - t0, note or f"{checked} cases checked"
    )
    rec.counterexamples = bad[:10]
    return [rec]


@claim("kripke_random", "bounds", randomized=True)
def _kripke_random(seed, samples):
    rng = random.Random(seed)
    t0 = time.perf_counter()
    bad = []
    pool = ("p", "q", "r")
    for _ in range(samples):
        kind = rng.choice(("dep", "anon", "incl", "excl", "indep"))
        f = random_formula(rng, pool, (kind,), leaves=3)
        g = random_formula(rng, pool, (kind,), leaves=3)
        conn = rng.choice(("and", "or", "exists", "forall"))
        rec = checks.kripke_bound_check(f, g, conn, rng.choice(pool))
        if not rec.passed:
            bad.append(rec.to_json())
    return _violations("kripke_random", {"seed": seed, "samples": samples}, samples, bad, t0)


@claim("aritydim_random", "bounds", randomized=True)
def _aritydim_random(seed, samples):
    rng = random.Random(seed + 1)
    t0 = time.perf_counter()
    bad = []
    for _ in range(samples):
        kind = rng.choice(checks.ARITYDIM_KINDS)
        f = random_formula(rng, ("p", "q", "r"), (kind,), leaves=4)
        rec = checks.aritydim_check(f)
        if not rec.passed:
            bad.append(rec.to_json())
    return _violations("aritydim_random", {"seed": seed, "samples": samples}, samples, bad, t0)


@claim("max_in_crit", "bounds", randomized=True)
def _max_in_crit(seed, samples):
    rng = random.Random(seed + 2)
    t0 = time.perf_counter()
    bad = []
    for _ in range(samples):
        F = random_family(rng, rng.randint(1, 5))
        crit = set(critical_sets(F).members)
        dcrit = set(critical_sets(F, dual=True).members)
        if not set(extremal_sets(F, "max").members) <= crit or not set(extremal_sets(F, "min").members) <= dcrit:
            bad.append(F.to_json())
    return _violations("max_in_crit", {"seed": seed, "samples": samples}, samples, bad, t0)


@claim("fast_vs_exact", "bounds", randomized=True)
def _fast_vs_exact(seed, samples):
    rng = random.Random(seed + 3)
    t0 = time.perf_counter()
    bad = []
    modes = ("down", "up", "quasi_down", "quasi_up", None)
    for i in range(samples):
        base = rng.randint(1, 5)
        mode = modes[i % len(modes)]
        F = random_family(rng, base) if mode is None else random_closed_family(rng, base, mode)
        for kind in ("upper", "dual_upper"):
            if compute_dimension(F, kind).value != exact_dimension(F, kind).value:
                bad.append({"family": F.to_json(), "kind": kind})
    return _violations("fast_vs_exact", {"seed": seed, "samples": samples}, samples, bad, t0)


# ---------------------------------------------------------------------------
# gaps


@claim("inexpressibility_gaps", "gaps")
def _gaps(limit: int = 10 ** 6):
    out = []
    for thm in checks.GAP_THEOREMS:
        for kind in checks.GAP_KINDS[thm]:
            for k, n, m in checks.gap_parameters(thm, kind, limit):
                out.append(checks.inexpressibility_gap(thm, kind, k, n, m))
    return out


# ---------------------------------------------------------------------------
# probes

SCOPE3 = ("p", "q", "r")


@claim("locality", "probes", randomized=True)
def _locality(seed, samples):
    rng = random.Random(seed + 4)
    t0 = time.perf_counter()
    bad = []
    big = SCOPE3 + ("s",)
    kinds = ("dep", "anon", "incl", "excl", "indep", "pincl", "nonconst")
    for _ in range(samples):
        f = random_formula(rng, SCOPE3, kinds, ops=("and", "or", "gor", "exists", "forall"), leaves=4)
        code = rng.randrange(1 << 16)
        eng = Engine(f, big, table_limit=0)
        full = eng.sat(f, eng.team_mask(big, code))
        local = satisfies(restrict(Team(Scope(big), code), free_vars(f)), f)
        if full != local:
            bad.append({"formula": str(f), "team": Team(Scope(big), code).to_literal()})
    return _violations("locality", {"seed": seed, "samples": samples}, samples, bad, t0)


def _is_down(ind):
    n = ind.size.bit_length() - 1
    codes = np.flatnonzero(ind)
    return all(ind[c & ~(1 << e)] for c in codes for e in range(n) if c >> e & 1)


def _is_union_closed(ind):
    codes = [int(c) for c in np.flatnonzero(ind)]
    return all(ind[a | b] for a in codes for b in codes if a < b)


@claim("closure_by_construction", "probes", randomized=True)
def _closure(seed, samples):
    rng = random.Random(seed + 5)
    t0 = time.perf_counter()
    bad = []
    per = {"down": ("dep", "excl"), "union": ("anon", "incl"), "flat": ()}
    for i in range(samples):
        logic = ("down", "union", "flat")[i % 3]
        f = random_formula(rng, SCOPE3, per[logic], leaves=4)
        ind = team_property(f, SCOPE3).family.indicator
        prof = closure_profile(team_property(f, SCOPE3).family)
        if logic == "down":
            ok = ind[0] and _is_down(ind)
        elif logic == "union":
            ok = ind[0] and _is_union_closed(ind)
        else:
            ok = prof.flat_compatible
        if not ok:
            bad.append({"logic": logic, "formula": str(f)})
    return _violations("closure_by_construction", {"seed": seed, "samples": samples}, samples, bad, t0)


@claim("closure_probes", "probes", randomized=True)
def _closure_probes(seed, samples):
    rng = random.Random(seed + 6)
    t0 = time.perf_counter()
    bad = []
    pool = ("p", "q1", "q2")
    for i in range(samples):
        logic = ("PL_exc", "PL_inc")[i % 2]
        kind = "excl" if logic == "PL_exc" else "incl"
        f = random_formula(rng, pool, (kind,), ops=("and", "or"), leaves=5)
        if not checks.closure_probe(logic, f).passed:
            bad.append({"logic": logic, "formula": str(f)})
    # the separating atoms break the respective properties
    if checks.exc_probe_holds(Dep((), "p")):
        bad.append({"logic": "PL_exc", "formula": "dep(; p)", "expected": "violation"})
    if checks.inc_probe_holds(parse("pincl(1, p)")):
        bad.append({"logic": "PL_inc", "formula": "pincl(1, p)", "expected": "violation"})
    return _violations("closure_probes", {"seed": seed, "samples": samples}, samples, bad, t0)


# ---------------------------------------------------------------------------
# running


def claims(suite: str = "all") -> list[Claim]:
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; expected one of {('all',) + SUITES}")
    return [c for c in REGISTRY if suite == "all" or c.suite == suite]


def _run_one(args):
    c, seed, samples = args
    try:
        return c(seed, samples)
    except CapExceeded as e:
        return [VerificationRecord(c.id, {}, None, None, "=", False, 0.0, f"cap exceeded: {e}")]


def run_suite(suite: str = "all", seed: int = DEFAULT_SEED, samples: int = DEFAULT_SAMPLES, jobs: int = 1):
    """Run every claim of ``suite``; records come back grouped in registry order."""
    todo = [(c, seed, samples) for c in claims(suite)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(_run_one, todo))
    else:
        results = [_run_one(t) for t in todo]
    return [(c.id, recs) for (c, _, _), recs in zip(todo, results)]
