"""Team semantics: satisfaction, team properties, locality and equivalence."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .._bits import canon_key
from ..config import max_scope, max_scope_per_team
from ..errors import CapExceeded, PreconditionError
from ..formula import Formula, free_vars
from ..setfam import SetFamily
from .engine import Engine
from .team import Scope, Team, TeamProperty, parse_team, teams_from_json

__all__ = [
    "Engine", "Scope", "Team", "TeamProperty", "parse_team", "teams_from_json",
    "satisfies", "team_property", "restrict", "equivalent", "Equivalence",
    "natural_scope",
]


@lru_cache(maxsize=64)
def _engine(f: Formula, scope: tuple[str, ...]) -> Engine:
    return Engine(f, scope)


def _natural_key(v: str):
    import re

    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", v)]


def natural_scope(vs) -> Scope:
    """Variables in natural order (``p2`` before ``p10``)."""
    return Scope(tuple(sorted(vs, key=_natural_key)))


def restrict(team: Team, vs) -> Team:
    """Projection of ``team`` onto the variables ``vs`` (kept in scope order)."""
    vs = set(vs)
    if not vs <= set(team.scope.vars):
        raise PreconditionError(f"variables {sorted(vs - set(team.scope.vars))} are not in the scope")
    sc = team.scope
    keep = [j for j, v in enumerate(sc.vars) if v in vs]
    new = Scope(tuple(sc.vars[j] for j in keep))
    code = 0
    for e in team.members:
        r = 0
        for j in keep:
            r = (r << 1) | (e >> (sc.n - 1 - j) & 1)
        code |= 1 << r
    return Team(new, code)


def _local_vector(f: Formula, fv: tuple[str, ...]) -> np.ndarray:
    eng = _engine(f, fv)
    assert eng.fv(f) == fv
    if eng.tableable(f):
        return eng.table(f)
    out = np.zeros(1 << (1 << len(fv)), dtype=bool)
    for code in range(out.size):
        out[code] = eng.sat(f, eng.team_mask(fv, code))
    return out


def _check_fv(f: Formula, scope: Scope) -> tuple[str, ...]:
    fv = free_vars(f)
    missing = fv - set(scope.vars)
    if missing:
        raise PreconditionError(f"free variables {sorted(missing)} are not in the scope")
    return tuple(v for v in scope.vars if v in fv)


def satisfies(team: Team, f: Formula) -> bool:
    """``team ⊨ f``, evaluated on the restriction of the team to ``FV(f)``."""
    fv = _check_fv(f, team.scope)
    if len(fv) > max_scope_per_team():
        raise CapExceeded(f"{len(fv)} free variables exceed the single-team cap {max_scope_per_team()}")
    local = restrict(team, fv)
    eng = _engine(f, fv)
    if eng.tableable(f):
        return bool(eng.table(f)[local.code])
    return eng.sat(f, eng.team_mask(fv, local.code))


def team_property(f: Formula, scope) -> TeamProperty:
    """``{T ⊆ Eval(scope) : T ⊨ f}``."""
    scope = Scope.of(scope)
    fv = _check_fv(f, scope)
    if scope.n > max_scope():
        raise CapExceeded(f"scope of {scope.n} variables exceeds the enumeration cap {max_scope()}")
    vec = _local_vector(f, fv)
    if fv != scope.vars:
        eng = _engine(f, fv)
        vec = vec[eng._proj_map(scope.vars, fv)]
    return TeamProperty(scope, SetFamily.from_indicator(scope.base(), vec))


@dataclass(frozen=True)
class Equivalence:
    equivalent: bool
    scope: Scope
    counterexample: Team | None = None
    # which side the counterexample satisfies
    satisfied_by: str | None = None

    def __bool__(self):
        return self.equivalent


def equivalent(f: Formula, g: Formula) -> Equivalence:
    """Exhaustive equivalence check over all teams on ``FV(f) = FV(g)``."""
    ff, fg = free_vars(f), free_vars(g)
    if ff != fg:
        raise PreconditionError(
            f"free variables differ: {sorted(ff, key=_natural_key)} vs {sorted(fg, key=_natural_key)}"
        )
    scope = natural_scope(ff)
    if scope.n > max_scope():
        raise CapExceeded(f"{scope.n} free variables exceed the enumeration cap {max_scope()}")
    a = _local_vector(f, scope.vars)
    b = _local_vector(g, scope.vars)
    diff = np.flatnonzero(a != b)
    if diff.size == 0:
        return Equivalence(True, scope)
    first = min((int(c) for c in diff), key=canon_key)
    return Equivalence(False, scope, Team(scope, first), "left" if a[first] else "right")
