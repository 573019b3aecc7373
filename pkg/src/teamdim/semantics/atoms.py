"""Atoms as constraints on a set of local evaluations.

Every atom is reduced to one of a few constraint shapes over the ``2^m``
evaluations of its own variables:

* ``forbid``: no two members (possibly equal) may form a listed pair;
* ``witness``: each member ``s`` that has a requirement needs a member of
  ``W(s)`` in the team;
* ``pair``: each pair ``(s, s')`` with a requirement needs a member of
  ``W(s, s')``;
* ``some``: the team is empty or meets a given set;
* ``split``: the team is empty or is not inside a single class.

The same description drives full tables, single-team checks and kernels.
"""
from __future__ import annotations

from itertools import product

import numpy as np

from .._bits import iter_bits, subset_or
from ..formula import (
    And,
    Anon,
    Bot,
    Dep,
    Exc,
    Inc,
    Indep,
    Lit,
    NonConst,
    Or,
    PrimInc,
    RelExc,
    RelInc,
    Top,
)


def local_eval_bits(m: int) -> list[np.ndarray]:
    """Value of variable j (most significant first) in each local evaluation."""
    e = np.arange(1 << m, dtype=np.int64)
    return [((e >> (m - 1 - j)) & 1).astype(bool) for j in range(m)]


def pl_values(f, names: tuple[str, ...]) -> np.ndarray:
    """Classical truth value of a propositional formula at every local evaluation."""
    cols = dict(zip(names, local_eval_bits(len(names))))
    size = 1 << len(names)

    def go(g):
        if isinstance(g, Lit):
            v = cols[g.var]
            return v if g.pos else ~v
        if isinstance(g, Top):
            return np.ones(size, dtype=bool)
        if isinstance(g, Bot):
            return np.zeros(size, dtype=bool)
        if isinstance(g, And):
            return go(g.left) & go(g.right)
        if isinstance(g, Or):
            return go(g.left) | go(g.right)
        raise TypeError(f"not a propositional formula: {g!r}")

    return go(f)


def _tuple_codes(args, names) -> np.ndarray:
    code = np.zeros(1 << len(names), dtype=np.int64)
    for a in args:
        code = (code << 1) | pl_values(a, names).astype(np.int64)
    return code


def _mask(idx) -> int:
    m = 0
    for i in idx:
        m |= 1 << int(i)
    return m


class AtomConstraint:
    def __init__(self, shape: str, m: int, data):
        self.shape = shape
        self.m = m
        self.size = 1 << m
        self.data = data

    # single team ----------------------------------------------------------

    def check(self, t: int) -> bool:
        shape, d = self.shape, self.data
        if shape == "forbid":
            for s, s2 in d:
                if t >> s & 1 and t >> s2 & 1:
                    return False
            return True
        if shape == "witness":
            for s in iter_bits(t):
                w = d[s]
                if w is not None and not t & w:
                    return False
            return True
        if shape == "pair":
            for (s, s2), w in d.items():
                if t >> s & 1 and t >> s2 & 1 and not t & w:
                    return False
            return True
        if shape == "some":
            return t == 0 or bool(t & d)
        if shape == "split":
            return t == 0 or not any(t & ~k == 0 for k in d)
        raise AssertionError(shape)

    def kernel(self, t: int) -> int:
        """Largest subteam satisfying the atom; only for union closed shapes."""
        if self.shape == "witness":
            d = self.data
            while True:
                drop = 0
                for s in iter_bits(t):
                    w = d[s]
                    if w is not None and not t & w:
                        drop |= 1 << s
                if not drop:
                    return t
                t &= ~drop
        if self.shape in ("some", "split"):
            return t if self.check(t) else 0
        raise ValueError(f"no kernel for a {self.shape} constraint")

    @property
    def union_closed(self) -> bool:
        return self.shape in ("witness", "some", "split")

    @property
    def downward_closed(self) -> bool:
        return self.shape == "forbid"

    # all teams ------------------------------------------------------------

    def table(self) -> np.ndarray:
        n = self.size
        codes = np.arange(1 << n, dtype=np.int64)
        shape, d = self.shape, self.data
        if shape == "forbid":
            bad = np.zeros(1 << n, dtype=bool)
            for s, s2 in d:
                bad[(1 << s) | (1 << s2)] = True
            return ~subset_or(bad, n)
        if shape == "witness":
            out = np.ones(1 << n, dtype=bool)
            for s in range(n):
                w = d[s]
                if w is None:
                    continue
                out &= ((codes >> s) & 1 == 0) | ((codes & w) != 0)
            return out
        if shape == "pair":
            out = np.ones(1 << n, dtype=bool)
            for (s, s2), w in d.items():
                both = ((codes >> s) & 1 == 1) & ((codes >> s2) & 1 == 1)
                out &= ~both | ((codes & w) != 0)
            return out
        if shape == "some":
            return (codes == 0) | ((codes & d) != 0)
        if shape == "split":
            inside = np.zeros(1 << n, dtype=bool)
            for k in d:
                inside |= (codes & ~k) == 0
            return (codes == 0) | ~inside
        raise AssertionError(shape)


def build_constraint(atom, names: tuple[str, ...]) -> AtomConstraint:
    """Constraint of ``atom`` over the local evaluations of ``names``."""
    m = len(names)
    n = 1 << m
    if isinstance(atom, (Dep, Anon)):
        a = _tuple_codes(atom.args, names)
        q = pl_values(atom.target, names)
        if isinstance(atom, Dep):
            pairs = [
                (s, s2)
                for s in range(n)
                for s2 in range(s + 1, n)
                if a[s] == a[s2] and q[s] != q[s2]
            ]
            return AtomConstraint("forbid", m, pairs)
        w = [_mask(np.flatnonzero((a == a[s]) & (q != q[s]))) for s in range(n)]
        return AtomConstraint("witness", m, w)
    if isinstance(atom, (Inc, Exc)):
        left = _tuple_codes(atom.left, names)
        right = _tuple_codes(atom.right, names)
        if isinstance(atom, Inc):
            w = [_mask(np.flatnonzero(right == left[s])) for s in range(n)]
            return AtomConstraint("witness", m, w)
        pairs = [(s, s2) for s in range(n) for s2 in range(n) if left[s] == right[s2]]
        return AtomConstraint("forbid", m, pairs)
    if isinstance(atom, (RelInc, RelExc)):
        left = _tuple_codes(atom.left, names)
        right = _tuple_codes(atom.right, names)
        alpha = pl_values(atom.alpha, names)
        beta = pl_values(atom.beta, names)
        if isinstance(atom, RelInc):
            w = [
                _mask(np.flatnonzero(beta & (right == left[s]))) if alpha[s] else None
                for s in range(n)
            ]
            return AtomConstraint("witness", m, w)
        pairs = [
            (s, s2)
            for s in range(n)
            for s2 in range(n)
            if alpha[s] and beta[s2] and left[s] == right[s2]
        ]
        return AtomConstraint("forbid", m, pairs)
    if isinstance(atom, Indep):
        c = _tuple_codes(atom.cond, names)
        lft = _tuple_codes(atom.left, names)
        rgt = _tuple_codes(atom.right, names)
        need = {}
        for s, s2 in product(range(n), repeat=2):
            if c[s] != c[s2]:
                continue
            w = _mask(np.flatnonzero((c == c[s]) & (lft == lft[s]) & (rgt == rgt[s2])))
            # a pair that is its own witness imposes nothing
            if w >> s & 1 or w >> s2 & 1:
                continue
            need[(s, s2)] = w
        return AtomConstraint("pair", m, need)
    if isinstance(atom, PrimInc):
        code = _tuple_codes(atom.args, names)
        target = 0
        for b in atom.bits:
            target = (target << 1) | int(b)
        return AtomConstraint("some", m, _mask(np.flatnonzero(code == target)))
    if isinstance(atom, NonConst):
        code = _tuple_codes(atom.args, names)
        classes = [_mask(np.flatnonzero(code == v)) for v in np.unique(code)]
        return AtomConstraint("split", m, classes)
    raise TypeError(f"not an atom: {atom!r}")
