"""Atom bookkeeping for fragment membership."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .nodes import Atom, EMight, Exists, Forall, Formula, GOr, Might, NE, SMight

# non-atomic constructs that still take a formula out of plain QPL
_OPERATOR_KINDS = (NE, Might, SMight, EMight, GOr)


def _arity_key(a):
    return max(a) if isinstance(a, tuple) else a


@dataclass(frozen=True)
class FragmentProfile:
    histogram: dict[str, int] = field(default_factory=dict)
    max_arity: dict[str, object] = field(default_factory=dict)
    quantifier_free: bool = True

    def occurrences(self, kind: str) -> int:
        return self.histogram.get(kind, 0)

    @property
    def atom_count(self) -> int:
        return sum(self.histogram.values())

    def kinds(self) -> set[str]:
        return set(self.histogram)

    def in_fragment(self, kind: str, k, n: int) -> bool:
        """Membership in QPL(kind_k)_n: at most n kind-atoms of arity ≤ k, nothing else."""
        if self.kinds() - {kind}:
            return False
        if self.occurrences(kind) > n:
            return False
        if kind not in self.max_arity:
            return True
        ar = self.max_arity[kind]
        if isinstance(k, tuple):
            return all(a <= b for a, b in zip(ar, k))
        return _arity_key(ar) <= k

    def to_json(self) -> dict:
        return {
            "histogram": dict(self.histogram),
            "max_arity": {k: list(v) if isinstance(v, tuple) else v for k, v in self.max_arity.items()},
            "quantifier_free": self.quantifier_free,
        }


def fragment_profile(f: Formula) -> FragmentProfile:
    hist: Counter[str] = Counter()
    arity: dict[str, object] = {}
    qfree = True
    for g in f.walk():
        if isinstance(g, (Exists, Forall)):
            qfree = False
        elif isinstance(g, Atom):
            kind = g.kind
            hist[kind] += 1
            a = g.arity
            if kind not in arity:
                arity[kind] = a
            elif isinstance(a, tuple):
                arity[kind] = tuple(max(x, y) for x, y in zip(arity[kind], a))
            else:
                arity[kind] = max(arity[kind], a)
        elif isinstance(g, _OPERATOR_KINDS):
            hist[g.kind] += 1
    return FragmentProfile(dict(hist), arity, qfree)
