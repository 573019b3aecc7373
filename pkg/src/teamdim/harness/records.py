"""Atom specifications and verification records."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..errors import PreconditionError
from ..formula import Anon, Dep, Exc, Formula, Inc, Indep, NonConst, PrimInc

ATOM_KINDS = ("dep", "anon", "incl", "excl", "indep", "pincl", "nonconst")


@dataclass(frozen=True)
class AtomSpec:
    """A single atom over fresh, mutually distinct variables."""

    kind: str
    k: int
    m: int | None = None

    def __post_init__(self):
        if self.kind not in ATOM_KINDS:
            raise PreconditionError(f"unknown atom kind {self.kind!r}")
        if self.k < 0 or (self.m is not None and self.m < 0):
            raise PreconditionError("arities must be non-negative")
        if self.kind == "indep" and self.m is None:
            raise PreconditionError("independence needs both arities k and m")

    def variables(self) -> tuple[str, ...]:
        return tuple(v for grp in self._groups() for v in grp)

    def _groups(self):
        ps = tuple(f"p{i}" for i in range(1, self.k + 1))
        if self.kind in ("dep", "anon"):
            return ps, ("q",)
        if self.kind in ("incl", "excl"):
            return ps, tuple(f"q{i}" for i in range(1, self.k + 1))
        if self.kind == "indep":
            return ps, tuple(f"q{i}" for i in range(1, self.m + 1))
        return (ps,)

    def formula(self) -> Formula:
        g = self._groups()
        if self.kind == "dep":
            return Dep(g[0], g[1][0])
        if self.kind == "anon":
            return Anon(g[0], g[1][0])
        if self.kind == "incl":
            return Inc(*g)
        if self.kind == "excl":
            return Exc(*g)
        if self.kind == "indep":
            return Indep((), *g)
        if self.kind == "pincl":
            return PrimInc((True,) * self.k, g[0])
        return NonConst(g[0])

    def closed_form(self) -> int | None:
        k = self.k
        if self.kind in ("dep", "anon"):
            return 2 ** 2 ** k
        if self.kind == "incl":
            return 2 ** 2 ** k - 2 ** k
        if self.kind == "excl":
            return 2 ** 2 ** k - 2
        if self.kind == "indep":
            m = self.m
            return (2 ** 2 ** k - 2 ** k - 1) * (2 ** 2 ** m - 2 ** m - 1) + 2 ** k + 2 ** m
        return None

    def label(self) -> str:
        return f"{self.kind}(k={self.k})" if self.m is None else f"{self.kind}(k={self.k},m={self.m})"


@dataclass
class VerificationRecord:
    """Outcome of one check.

    ``relation`` says how ``computed`` is compared to ``closed_form``:
    ``=``, ``<=`` (a bound) or ``<`` (a strict gap). Report-only records
    have ``passed=None`` and never fail a suite.
    """

    claim: str
    params: dict
    computed: int | float | None
    closed_form: int | float | None
    relation: str
    passed: bool | None
    runtime: float = 0.0
    note: str = ""
    counterexamples: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "params": self.params,
            "computed": self.computed,
            "closed_form": self.closed_form,
            "relation": self.relation,
            "pass": self.passed,
            "runtime": round(self.runtime, 4),
            "note": self.note,
            "counterexamples": self.counterexamples,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, default=str)

    def line(self) -> str:
        status = {True: "PASS", False: "FAIL", None: "INFO"}[self.passed]
        ps = ", ".join(f"{k}={v}" for k, v in self.params.items())
        s = f"{status} {self.claim} [{ps}] computed={self.computed} {self.relation} {self.closed_form}"
        if self.note:
            s += f"  ({self.note})"
        return s


def compare(computed, target, relation: str) -> bool:
    if relation == "=":
        return computed == target
    if relation == "<=":
        return computed <= target
    if relation == "<":
        return computed < target
    raise ValueError(relation)
