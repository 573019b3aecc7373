"""Finite set families over a finite base set.

A ground set is an ``int`` whose bit ``i`` marks base element ``i``.  A
:class:`SetFamily` stores its members duplicate-free in canonical order,
that is by size and then numeric value, so every derived family and
witness is reproducible bit for bit.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import config
from ._bits import (
    bits,
    canon_key,
    submask_codes,
    subset_and,
    subset_bitor_values,
    subset_or,
    superset_and,
    superset_or,
)
from .errors import CapExceeded, ParseError, PreconditionError

GroundSet = int


@dataclass(frozen=True)
class BaseSet:
    size: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.size < 1:
            raise PreconditionError("base set must have at least one element")
        if self.size > config.MAX_BASE:
            raise CapExceeded(f"base size {self.size} exceeds cap {config.MAX_BASE}")
        if self.labels is not None:
            labels = tuple(self.labels)
            object.__setattr__(self, "labels", labels)
            if len(labels) != self.size or len(set(labels)) != self.size:
                raise PreconditionError("labels must be distinct, one per element")

    @property
    def full(self) -> GroundSet:
        return (1 << self.size) - 1

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i)

    def index(self, name: str) -> int:
        if self.labels and name in self.labels:
            return self.labels.index(name)
        if name.isdigit() and int(name) < self.size:
            return int(name)
        raise PreconditionError(f"unknown base element {name!r}")

    def format_set(self, s: GroundSet) -> str:
        return "{" + ",".join(self.label(i) for i in bits(s)) + "}"

    def parse_set(self, items: Iterable[str | int]) -> GroundSet:
        s = 0
        for it in items:
            s |= 1 << (it if isinstance(it, int) else self.index(it))
        if s & ~self.full:
            raise PreconditionError("set is not a subset of the base")
        return s


def _canonical(members: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(int(m) for m in members), key=canon_key))


@dataclass(frozen=True)
class SetFamily:
    base: BaseSet
    members: tuple[int, ...] = field(default=())

    def __post_init__(self):
        ms = _canonical(self.members)
        if len(ms) > config.MAX_MEMBERS:
            raise CapExceeded(f"family size {len(ms)} exceeds cap {config.MAX_MEMBERS}")
        full = self.base.full
        for m in ms:
            if m < 0 or m & ~full:
                raise PreconditionError(f"member {m} is not a subset of the base")
        object.__setattr__(self, "members", ms)

    # construction ---------------------------------------------------------

    @classmethod
    def of(cls, base: int | BaseSet, members: Iterable[int]) -> "SetFamily":
        if isinstance(base, int):
            base = BaseSet(base)
        return cls(base, tuple(members))

    @classmethod
    def from_indicator(cls, base: BaseSet, ind: np.ndarray) -> "SetFamily":
        idx = np.flatnonzero(ind).astype(np.int64)
        order = np.lexsort((idx, np.bitwise_count(idx)))
        fam = object.__new__(cls)
        object.__setattr__(fam, "base", base)
        object.__setattr__(fam, "members", tuple(int(x) for x in idx[order]))
        fam.__dict__["indicator"] = ind.astype(bool, copy=True)
        return fam

    @classmethod
    def power_set(cls, base: int | BaseSet) -> "SetFamily":
        if isinstance(base, int):
            base = BaseSet(base)
        return cls.from_indicator(base, np.ones(1 << base.size, dtype=bool))

    def with_members(self, members: Iterable[int]) -> "SetFamily":
        return SetFamily(self.base, tuple(members))

    # basic protocol -------------------------------------------------------

    @cached_property
    def indicator(self) -> np.ndarray:
        ind = np.zeros(1 << self.base.size, dtype=bool)
        if self.members:
            ind[np.fromiter(self.members, dtype=np.int64)] = True
        return ind

    def __contains__(self, s: int) -> bool:
        return 0 <= s <= self.base.full and bool(self.indicator[s])

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other):
        if not isinstance(other, SetFamily):
            return NotImplemented
        return self.base.size == other.base.size and self.members == other.members

    def __hash__(self):
        return hash((self.base.size, self.members))

    def issubfamily(self, other: "SetFamily") -> bool:
        return all(m in other for m in self.members)

    def complement_family(self) -> "SetFamily":
        """The family ``{X \\ A : A in F}``; it swaps the dual notions."""
        full = self.base.full
        return SetFamily(self.base, tuple(full ^ m for m in self.members))

    def relabel(self, perm: Sequence[int]) -> "SetFamily":
        """Move element ``i`` to ``perm[i]``."""
        def mv(s):
            return sum(1 << perm[i] for i in bits(s))
        return SetFamily(self.base, tuple(mv(m) for m in self.members))

    # text forms -----------------------------------------------------------

    def to_literal(self) -> str:
        if self.base.labels:
            head = "base={" + ",".join(self.base.labels) + "}"
        else:
            head = f"base={self.base.size}"
        body = ",".join(self.base.format_set(m) for m in self.members)
        return f"{head}; {{{body}}}"

    def to_json(self) -> dict:
        return {"base": self.base.size, "members": [bits(m) for m in self.members]}

    def __repr__(self):
        return f"SetFamily({self.to_literal()})"


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\{)|(\})|(,)|(;)|(=)|(∅)|([A-Za-z0-9_']+))")


def parse_family(text: str) -> SetFamily:
    """Parse the literal form or the JSON form of a family."""
    s = text.strip()
    if s.startswith("{") and '"base"' in s:
        return family_from_json(json.loads(s))
    toks: list[tuple[str, int]] = []
    pos = 0
    while pos < len(s):
        if s[pos:].strip() == "":
            break
        m = _TOKEN.match(s, pos)
        if not m:
            raise ParseError("unexpected character", pos, s)
        toks.append((m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    i = 0

    def expect(val):
        nonlocal i
        if i >= len(toks) or toks[i][0] != val:
            at = toks[i][1] if i < len(toks) else len(s)
            raise ParseError(f"expected {val!r}", at, s)
        i += 1

    def name_list():
        nonlocal i
        out = []
        expect("{")
        while i < len(toks) and toks[i][0] != "}":
            tok, at = toks[i]
            if tok in "{},;=":
                raise ParseError("expected element name", at, s)
            out.append(tok)
            i += 1
            if i < len(toks) and toks[i][0] == ",":
                i += 1
        expect("}")
        return out

    if not toks or toks[0][0] != "base":
        raise ParseError("family literal must start with 'base='", 0, s)
    i = 1
    expect("=")
    if i < len(toks) and toks[i][0].isdigit():
        base = BaseSet(int(toks[i][0]))
        i += 1
    else:
        base = BaseSet(len(names := name_list()), tuple(names))
    expect(";")
    expect("{")
    members = []
    while i < len(toks) and toks[i][0] != "}":
        if toks[i][0] == "∅":
            members.append(0)
            i += 1
        else:
            at = toks[i][1]
            try:
                members.append(base.parse_set(name_list()))
            except PreconditionError as e:
                raise ParseError(str(e), at, s) from None
        if i < len(toks) and toks[i][0] == ",":
            i += 1
    expect("}")
    if i != len(toks):
        raise ParseError("trailing input", toks[i][1], s)
    return SetFamily(base, tuple(members))


def family_from_json(obj: dict) -> SetFamily:
    base = obj["base"]
    if isinstance(base, list):
        base = BaseSet(len(base), tuple(base))
    else:
        base = BaseSet(int(base), tuple(obj["labels"]) if obj.get("labels") else None)
    return SetFamily(base, tuple(base.parse_set(m) for m in obj["members"]))


# ---------------------------------------------------------------------------
# operations


def interval(A: GroundSet, B: GroundSet, base: BaseSet | int) -> SetFamily:
    """``[A, B] = {C : A ⊆ C ⊆ B}``; empty when ``A`` is not below ``B``."""
    if isinstance(base, int):
        base = BaseSet(base)
    if (A | B) & ~base.full:
        raise PreconditionError("endpoints are not subsets of the base")
    if A & ~B:
        return SetFamily(base, ())
    codes = A | submask_codes(B & ~A)
    return SetFamily(base, tuple(int(c) for c in codes))


def shadow_codes(F: SetFamily, A: GroundSet, dual: bool = False) -> np.ndarray:
    """Codes of the (dual) convex shadow of ``A``, without the membership check."""
    if dual:
        codes = A | submask_codes(F.base.full & ~A)
        ok = subset_and(F.indicator[codes], (F.base.full & ~A).bit_count())
    else:
        codes = submask_codes(A)
        ok = superset_and(F.indicator[codes], A.bit_count())
    return codes[ok]


def convex_shadow(F: SetFamily, A: GroundSet, dual: bool = False) -> SetFamily:
    if A not in F:
        raise PreconditionError("shadow requested for a set outside the family")
    return F.with_members(int(c) for c in shadow_codes(F, A, dual))


def _has_strict_superset(ind: np.ndarray, n: int) -> np.ndarray:
    up = superset_or(ind, n)
    out = np.zeros_like(ind)
    idx = np.arange(ind.size)
    for i in range(n):
        lacking = (idx >> i) & 1 == 0
        out[lacking] |= up[idx[lacking] | (1 << i)]
    return out


def _maximal(F: SetFamily) -> SetFamily:
    ind = F.indicator
    return SetFamily.from_indicator(F.base, ind & ~_has_strict_superset(ind, F.base.size))


def extremal_sets(F: SetFamily, mode: str) -> SetFamily:
    """``max``, ``min``, ``max_q`` or ``min_q`` members of ``F``."""
    full = F.base.full
    if mode in ("max", "min") and not F.members:
        raise PreconditionError("extremal sets of the empty family")
    if mode == "max":
        return _maximal(F)
    if mode == "min":
        return _maximal(F.complement_family()).complement_family()
    if mode == "max_q":
        if full not in F:
            raise PreconditionError("Max^q needs the base set in the family")
        rest = F.with_members(m for m in F.members if m != full)
        core = _maximal(rest).members if rest.members else ()
        return F.with_members(core + (full,))
    if mode == "min_q":
        if 0 not in F:
            raise PreconditionError("Min^q needs the empty set in the family")
        rest = F.with_members(m for m in F.members if m != 0)
        core = extremal_sets(rest, "min").members if rest.members else ()
        return F.with_members(core + (0,))
    raise ValueError(f"unknown mode {mode!r}")


def is_critical(F: SetFamily, A: GroundSet, dual: bool = False) -> bool:
    # A loses criticality exactly when some A+x carries the whole shadow of A
    # one level up, i.e. B+x is in F for every B in the shadow (dually A-x).
    sh = shadow_codes(F, A, dual)
    ind = F.indicator
    for x in range(F.base.size):
        inside = A >> x & 1
        if dual and inside:
            if ind[sh & ~(1 << x)].all():
                return False
        elif not dual and not inside:
            if ind[sh | (1 << x)].all():
                return False
    return True


def critical_sets(F: SetFamily, dual: bool = False) -> SetFamily:
    if not F.members:
        raise PreconditionError("critical sets of the empty family")
    return F.with_members(A for A in F.members if is_critical(F, A, dual))


# ---------------------------------------------------------------------------
# closure properties


@dataclass(frozen=True)
class ClosureProfile:
    downward_closed: bool
    upward_closed: bool
    quasi_downward: bool
    quasi_upward: bool
    convex: bool
    union_closed: bool
    intersection_closed: bool
    has_empty_set: bool
    has_base_set: bool
    flat_compatible: bool
    weak_quasi_downward: bool = False
    weak_quasi_upward: bool = False

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def _down_closed(ind: np.ndarray, n: int) -> bool:
    return bool(ind[0]) and not (superset_or(ind, n) & ~ind).any()


def _up_closed(ind: np.ndarray, n: int) -> bool:
    return bool(ind[-1]) and not (subset_or(ind, n) & ~ind).any()


def _union_closed(ind: np.ndarray, n: int) -> bool:
    # every family is allowed its empty subfamily, whose union is the empty set
    if not ind[0]:
        return False
    vals = np.where(ind, np.arange(ind.size, dtype=np.int64), 0)
    g = subset_bitor_values(vals, n)
    return bool(ind[g].all())


def closure_profile(F: SetFamily) -> ClosureProfile:
    n = F.base.size
    ind = F.indicator
    full = F.base.full
    has_empty = bool(ind[0])
    has_base = bool(ind[full])
    dc = _down_closed(ind, n)
    uc = _up_closed(ind, n)
    convex = not (superset_or(ind, n) & subset_or(ind, n) & ~ind).any()
    union = _union_closed(ind, n)
    inter = _union_closed(ind[::-1].copy(), n)
    wqd = wqu = False
    if has_base:
        rest = ind.copy()
        rest[full] = False
        wqd = _down_closed(rest, n)
    if has_empty:
        rest = ind.copy()
        rest[0] = False
        wqu = _up_closed(rest, n)
    return ClosureProfile(
        downward_closed=dc,
        upward_closed=uc,
        quasi_downward=wqd and not dc,
        quasi_upward=wqu and not uc,
        convex=convex,
        union_closed=union,
        intersection_closed=inter,
        has_empty_set=has_empty,
        has_base_set=has_base,
        flat_compatible=dc and union and has_empty,
        weak_quasi_downward=wqd,
        weak_quasi_upward=wqu,
    )
