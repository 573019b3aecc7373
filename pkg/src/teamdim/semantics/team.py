"""Scopes, teams and team properties."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable

from .._bits import iter_bits, popcount
from ..errors import ParseError, PreconditionError
from ..setfam import BaseSet, SetFamily


@dataclass(frozen=True)
class Scope:
    """Ordered variable list; the first variable is the most significant bit."""

    vars: tuple[str, ...] = ()

    def __post_init__(self):
        vs = tuple(self.vars)
        if len(set(vs)) != len(vs):
            raise PreconditionError("scope variables must be distinct")
        object.__setattr__(self, "vars", vs)

    @classmethod
    def of(cls, vs: "Scope | Iterable[str]") -> "Scope":
        return vs if isinstance(vs, Scope) else cls(tuple(vs))

    @property
    def n(self) -> int:
        return len(self.vars)

    @property
    def size(self) -> int:
        """Number of evaluations."""
        return 1 << self.n

    def __len__(self):
        return self.n

    def __iter__(self):
        return iter(self.vars)

    def __contains__(self, v):
        return v in self.vars

    def eval_label(self, e: int) -> str:
        return format(e, f"0{self.n}b") if self.n else "()"

    def parse_eval(self, s: str | int) -> int:
        if isinstance(s, int):
            if not 0 <= s < self.size:
                raise PreconditionError(f"evaluation {s} outside the scope")
            return s
        s = s.strip()
        if self.n == 0 and s in ("()", ""):
            return 0
        if len(s) != self.n or set(s) - {"0", "1"}:
            raise PreconditionError(f"evaluation {s!r} does not match scope {list(self.vars)}")
        return int(s, 2)

    def base(self) -> BaseSet:
        labels = tuple(self.eval_label(e) for e in range(self.size)) if self.n else None
        return BaseSet(self.size, labels)


@dataclass(frozen=True)
class Team:
    """A set of evaluations over a scope, stored as a bit set."""

    scope: Scope
    code: int = 0

    def __post_init__(self):
        object.__setattr__(self, "scope", Scope.of(self.scope))
        if self.code < 0 or self.code >> self.scope.size:
            raise PreconditionError("team members outside the scope")

    @classmethod
    def of(cls, scope, members: Iterable[str | int] = ()) -> "Team":
        sc = Scope.of(scope)
        code = 0
        for m in members:
            code |= 1 << sc.parse_eval(m)
        return cls(sc, code)

    @property
    def members(self) -> list[int]:
        return list(iter_bits(self.code))

    def __len__(self):
        return popcount(self.code)

    def __contains__(self, e):
        return bool(self.code >> self.scope.parse_eval(e) & 1)

    def assignments(self) -> list[dict[str, bool]]:
        n = self.scope.n
        return [
            {v: bool(e >> (n - 1 - j) & 1) for j, v in enumerate(self.scope.vars)}
            for e in self.members
        ]

    def to_literal(self) -> str:
        body = ",".join(self.scope.eval_label(e) for e in self.members)
        return f"scope=[{','.join(self.scope.vars)}]; {{{body}}}"

    def to_json(self) -> dict:
        return {
            "scope": list(self.scope.vars),
            "teams": [[self.scope.eval_label(e) for e in self.members]],
        }

    def __str__(self):
        return self.to_literal()


_TEAM = re.compile(r"^\s*scope\s*=\s*\[(?P<scope>[^\]]*)\]\s*;\s*\{(?P<body>[^}]*)\}\s*$")


def parse_team(text: str) -> Team:
    """Parse ``scope=[p,q]; {11,00}`` or the JSON form."""
    s = text.strip()
    if s.startswith("{") and '"scope"' in s:
        teams = teams_from_json(json.loads(s))
        if len(teams) != 1:
            raise ParseError(f"expected one team, found {len(teams)}")
        return teams[0]
    m = _TEAM.match(s)
    if not m:
        raise ParseError("expected 'scope=[...]; {...}'", 0, s)
    scope = Scope(tuple(v.strip() for v in m["scope"].split(",") if v.strip()))
    items = [x.strip() for x in m["body"].split(",") if x.strip()]
    try:
        return Team.of(scope, items)
    except PreconditionError as e:
        raise ParseError(str(e), m.start("body"), s) from None


def teams_from_json(obj: dict) -> list[Team]:
    scope = Scope(tuple(obj["scope"]))
    if "members" in obj:
        return [Team.of(scope, obj["members"])]
    return [Team.of(scope, t) for t in obj["teams"]]


@dataclass(frozen=True)
class TeamProperty:
    """The teams over a scope satisfying a formula, as a set family."""

    scope: Scope
    family: SetFamily

    def __contains__(self, team: Team) -> bool:
        if team.scope != self.scope:
            raise PreconditionError("team and property have different scopes")
        return team.code in self.family

    def __len__(self):
        return len(self.family)

    def teams(self) -> list[Team]:
        return [Team(self.scope, c) for c in self.family.members]

    def to_json(self) -> dict:
        out = self.family.to_json()
        out["labels"] = list(self.family.base.labels or ())
        out["scope"] = list(self.scope.vars)
        return out
