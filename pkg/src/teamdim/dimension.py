"""Upper, dual upper, cylindrical, union and intersection dimensions.

Each computation returns a :class:`DimensionReport` whose witness can be
re-checked with :func:`verify_witness`.  Families with a known closure
shape take a closed-form path; everything else goes through an exact
minimum set cover over convex shadows or maximal intervals.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import config
from ._bits import bits, canon_key, submask_codes, subset_bitor_values
from .cover import min_cover
from .errors import CapExceeded, PreconditionError
from .setfam import (
    ClosureProfile,
    SetFamily,
    closure_profile,
    critical_sets,
    extremal_sets,
    shadow_codes,
)

KINDS = ("upper", "dual_upper", "cylindrical", "union", "intersection")
_ALIASES = {
    "dual": "dual_upper",
    "cyl": "cylindrical",
    "inter": "intersection",
    "D": "upper",
    "Dd": "dual_upper",
    "Dc": "cylindrical",
}

FAST = "fast_closed_form"
EXACT = "exact_cover"


def _kind(kind: str) -> str:
    kind = _ALIASES.get(kind, kind)
    if kind not in KINDS:
        raise ValueError(f"unknown dimension kind {kind!r}")
    return kind


@dataclass(frozen=True)
class DimensionReport:
    kind: str
    value: int
    witness: SetFamily | tuple[tuple[int, int], ...]
    path: str
    family_profile: ClosureProfile

    def to_json(self) -> dict:
        if isinstance(self.witness, SetFamily):
            wit = [bits(m) for m in self.witness.members]
        else:
            wit = [[bits(a), bits(b)] for a, b in self.witness]
        return {
            "kind": self.kind,
            "value": self.value,
            "witness": wit,
            "path": self.path,
            "profile": self.family_profile.to_json(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


# ---------------------------------------------------------------------------
# helpers


def _member_index(F: SetFamily) -> np.ndarray:
    pos = np.full(1 << F.base.size, -1, dtype=np.int64)
    pos[np.fromiter(F.members, dtype=np.int64, count=len(F))] = np.arange(len(F))
    return pos


def _solve(F: SetFamily, column_codes: list[np.ndarray]) -> list[int]:
    """Minimum cover of F's members by the given code sets (column order kept)."""
    pos = _member_index(F)
    ncol = len(column_codes)
    mat = np.zeros((len(F), ncol), dtype=bool)
    for j, codes in enumerate(column_codes):
        mat[pos[codes], j] = True
    packed = np.unique(np.packbits(mat, axis=1, bitorder="little"), axis=0)
    rows = [int.from_bytes(r.tobytes(), "little") for r in packed]
    return min_cover(rows)


def _upper(F: SetFamily, prof: ClosureProfile, dual: bool) -> tuple[int, SetFamily, str]:
    full = F.base.full
    if dual:
        if prof.downward_closed:
            return 1, F.with_members([0]), FAST
        if prof.upward_closed:
            w = extremal_sets(F, "min")
            return len(w), w, FAST
        if prof.quasi_downward:
            return 2, F.with_members([0, full]), FAST
        if prof.quasi_upward:
            w = extremal_sets(F, "min_q")
            return len(w), w, FAST
    else:
        if prof.downward_closed:
            w = extremal_sets(F, "max")
            return len(w), w, FAST
        if prof.upward_closed:
            return 1, F.with_members([full]), FAST
        if prof.quasi_downward:
            w = extremal_sets(F, "max_q")
            return len(w), w, FAST
        if prof.quasi_upward:
            return 2, F.with_members([0, full]), FAST
    return _upper_exact(F, dual)


def _upper_exact(F: SetFamily, dual: bool) -> tuple[int, SetFamily, str]:
    crit = critical_sets(F, dual).members
    cols = [shadow_codes(F, A, dual) for A in crit]
    chosen = _solve(F, cols)
    w = F.with_members(crit[j] for j in chosen)
    return len(w), w, EXACT


def maximal_intervals(F: SetFamily) -> list[tuple[int, int]]:
    """All maximal intervals ``[A, B]`` inside F, ordered by (A, B) canonically."""
    ind = F.indicator
    out = []
    for B in F.members:
        codes = shadow_codes(F, B)
        lows = extremal_sets(F.with_members(int(c) for c in codes), "min").members
        free = [x for x in range(F.base.size) if not B >> x & 1]
        for A in lows:
            inner = A | submask_codes(B & ~A)
            if any(ind[inner | (1 << x)].all() for x in free):
                continue
            out.append((A, B))
            if len(out) > config.MAX_INTERVALS:
                raise CapExceeded("too many maximal intervals")
    out.sort(key=lambda ab: (canon_key(ab[0]), canon_key(ab[1])))
    return out


def _cylindrical(F: SetFamily) -> tuple[int, tuple[tuple[int, int], ...], str]:
    ivs = maximal_intervals(F)
    cols = [A | submask_codes(B & ~A) for A, B in ivs]
    chosen = _solve(F, cols)
    return len(chosen), tuple(ivs[j] for j in chosen), EXACT


def join_irreducibles(F: SetFamily) -> SetFamily:
    """Nonempty members that are not the union of the members strictly below them."""
    n = F.base.size
    ind = F.indicator
    vals = np.where(ind, np.arange(ind.size, dtype=np.int64), 0)
    g = subset_bitor_values(vals, n)
    out = []
    for A in F.members:
        if A == 0:
            continue
        below = 0
        for x in bits(A):
            below |= int(g[A & ~(1 << x)])
        if below != A:
            out.append(A)
    return F.with_members(out)


# ---------------------------------------------------------------------------
# public API


def compute_dimension(F: SetFamily, kind: str = "upper") -> DimensionReport:
    kind = _kind(kind)
    if not F.members:
        raise PreconditionError("dimension of the empty family is undefined")
    prof = closure_profile(F)
    if kind in ("upper", "dual_upper"):
        value, wit, path = _upper(F, prof, kind == "dual_upper")
    elif kind == "cylindrical":
        value, wit, path = _cylindrical(F)
    elif kind == "union":
        if not prof.union_closed:
            raise PreconditionError("union dimension needs a union closed family")
        wit = join_irreducibles(F)
        value, path = len(wit), FAST
    else:
        if not prof.intersection_closed:
            raise PreconditionError("intersection dimension needs an intersection closed family")
        wit = join_irreducibles(F.complement_family()).complement_family()
        value, path = len(wit), FAST
    return DimensionReport(kind, value, wit, path, prof)


def exact_dimension(F: SetFamily, kind: str = "upper") -> DimensionReport:
    """Like :func:`compute_dimension` but always through the cover solver."""
    kind = _kind(kind)
    if kind not in ("upper", "dual_upper"):
        return compute_dimension(F, kind)
    if not F.members:
        raise PreconditionError("dimension of the empty family is undefined")
    value, wit, path = _upper_exact(F, kind == "dual_upper")
    return DimensionReport(kind, value, wit, path, closure_profile(F))


def upper_dimension(F: SetFamily) -> int:
    return compute_dimension(F, "upper").value


def dual_upper_dimension(F: SetFamily) -> int:
    return compute_dimension(F, "dual_upper").value


def _union_closure(ws, full: int, meet: bool = False) -> set[int]:
    acc = {full if meet else 0}
    for w in ws:
        acc |= {(a & w) if meet else (a | w) for a in acc}
    return acc


def verify_witness(F: SetFamily, report: DimensionReport) -> bool:
    kind = report.kind
    wit = report.witness
    if kind == "cylindrical":
        if len(wit) != report.value:
            return False
        covered = np.zeros_like(F.indicator)
        for A, B in wit:
            if A & ~B:
                return False
            codes = A | submask_codes(B & ~A)
            if not F.indicator[codes].all():
                return False
            covered[codes] = True
        return bool((covered == F.indicator).all())
    if len(wit) != report.value or not wit.issubfamily(F):
        return False
    if kind in ("upper", "dual_upper"):
        covered = np.zeros_like(F.indicator)
        for A in wit.members:
            covered[shadow_codes(F, A, kind == "dual_upper")] = True
        return bool((covered == F.indicator).all())
    gen = _union_closure(wit.members, F.base.full, meet=(kind == "intersection"))
    return gen == set(F.members)


@dataclass(frozen=True)
class IdentityReport:
    D: int
    Dd: int
    Dc: int
    convex: bool
    checks: dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def check_dimension_identities(F: SetFamily) -> IdentityReport:
    d = compute_dimension(F, "upper").value
    dd = compute_dimension(F, "dual_upper").value
    dc = compute_dimension(F, "cylindrical").value
    convex = closure_profile(F).convex
    checks = {"D<=Dc": d <= dc, "Dd<=Dc": dd <= dc}
    if convex:
        checks["Dc<=D*Dd"] = dc <= d * dd
    return IdentityReport(d, dd, dc, convex, checks)
