"""Exact minimum set cover by branch and bound.

Rows are the elements to cover, given as ``int`` bitmasks over column
indices; a chosen column covers every row whose mask contains it.  The
solver returns the lexicographically least minimum cover, so callers that
number their columns canonically get deterministic witnesses.
"""
from __future__ import annotations

from ._bits import bits
from .errors import CapExceeded, PreconditionError

MAX_NODES = 20_000_000


def reduce_rows(rows) -> tuple[int, ...]:
    """Drop duplicate rows and rows implied by a row with fewer columns."""
    uniq = sorted(set(rows), key=lambda r: (r.bit_count(), r))
    kept: list[int] = []
    for r in uniq:
        if not any(k & r == k for k in kept):
            kept.append(r)
    return tuple(kept)


def greedy_cover(rows) -> list[int]:
    rows = list(rows)
    chosen = []
    while rows:
        counts: dict[int, int] = {}
        for r in rows:
            for c in bits(r):
                counts[c] = counts.get(c, 0) + 1
        c = min(counts, key=lambda c: (-counts[c], c))
        chosen.append(c)
        rows = [r for r in rows if not r >> c & 1]
    return sorted(chosen)


def _disjoint_bound(rows) -> int:
    used = 0
    n = 0
    for r in rows:
        if not r & used:
            used |= r
            n += 1
    return n


class _Solver:
    def __init__(self, max_nodes: int = MAX_NODES):
        self.failed: set[tuple[tuple[int, ...], int]] = set()
        self.nodes = 0
        self.max_nodes = max_nodes

    def feasible(self, rows: tuple[int, ...], k: int) -> bool:
        if not rows:
            return True
        if k <= 0:
            return False
        key = (rows, k)
        if key in self.failed:
            return False
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise CapExceeded("set cover search exceeded its node budget")
        # rows arrive sorted by popcount, so rows[0] has fewest options
        if _disjoint_bound(rows) > k:
            self.failed.add(key)
            return False
        excluded = 0
        for c in bits(rows[0]):
            rest = []
            ok = True
            for r in rows:
                if r >> c & 1:
                    continue
                r &= ~excluded
                if not r:
                    ok = False
                    break
                rest.append(r)
            if ok:
                rest.sort(key=lambda r: (r.bit_count(), r))
                if self.feasible(tuple(rest), k - 1):
                    return True
            excluded |= 1 << c
        self.failed.add(key)
        return False


def _restrict(rows, c: int) -> tuple[int, ...] | None:
    """Rows not hit by ``c``, limited to columns above ``c``."""
    hi = ~((1 << (c + 1)) - 1)
    out = []
    for r in rows:
        if r >> c & 1:
            continue
        r &= hi
        if not r:
            return None
        out.append(r)
    return reduce_rows(out)


def min_cover(rows, *, max_nodes: int = MAX_NODES) -> list[int]:
    """Lexicographically least minimum set of columns hitting every row."""
    rows = reduce_rows(rows)
    if any(r == 0 for r in rows):
        raise PreconditionError("some element has no covering column")
    if not rows:
        return []
    solver = _Solver(max_nodes)
    upper = len(greedy_cover(rows))
    k = _disjoint_bound(rows)
    while k < upper and not solver.feasible(rows, k):
        k += 1
    chosen: list[int] = []
    cur = rows
    for left in range(k, 0, -1):
        # the next column cannot exceed the largest option of any open row
        ceiling = min(r.bit_length() - 1 for r in cur)
        for c in bits(_union(cur)):
            if c > ceiling:
                break
            rest = _restrict(cur, c)
            if rest is not None and solver.feasible(rest, left - 1):
                chosen.append(c)
                cur = rest
                break
        else:  # pragma: no cover - k was proven feasible
            raise AssertionError("lex-least reconstruction failed")
        if not cur:
            break
    return chosen


def _union(rows) -> int:
    u = 0
    for r in rows:
        u |= r
    return u


def brute_min_cover(rows, ncols: int) -> list[int]:
    """Reference solver: scan column subsets by size, then lexicographically."""
    from itertools import combinations

    rows = list(rows)
    for k in range(ncols + 1):
        for combo in combinations(range(ncols), k):
            m = sum(1 << c for c in combo)
            if all(r & m for r in rows):
                return list(combo)
    raise PreconditionError("no cover exists")
