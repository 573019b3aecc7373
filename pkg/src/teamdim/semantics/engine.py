"""Evaluation engine.

Two evaluation modes share one :class:`Engine`:

*Tables.*  A subformula whose every node has at most ``max_scope()`` free
variables gets a full satisfaction vector indexed by team code over its own
free variables (MSB = first variable in rank order).  Children are lifted
to the parent's variables through projection maps on team codes; lax
disjunction is the union product computed with subset zeta/Möbius
transforms, ``∃`` is image under projection and ``∀`` is lookup at the
cylinder.

*Single teams.*  Larger subformulas are evaluated on one team at a time.
Teams are bitmasks over the evaluations of *all* variables of the formula,
so projection and duplication of a variable are a couple of shifts.  Lax
disjunction and existential blocks use closure information (flatness,
downward closure, union closure) to avoid enumerating splits or
supplementing functions; a general enumeration remains as a fallback.
"""
from __future__ import annotations

from itertools import product

import numpy as np

from .._bits import (
    iter_bits,
    subset_bitor_values,
    subset_mobius,
    subset_or,
    subset_sum,
    superset_or,
)
from ..config import max_scope
from ..errors import CapExceeded
from ..formula import (
    NE,
    And,
    Atom,
    Bot,
    EMight,
    Exists,
    Forall,
    GOr,
    Lit,
    Might,
    Or,
    SMight,
    Top,
    all_vars,
    free_vars,
)
from .atoms import build_constraint, local_eval_bits

# largest number of subteams/splits a fallback may enumerate
ENUM_LIMIT = 1 << 20
# largest number of variables in the shared evaluation space
SPACE_LIMIT = 16


def _union_closed_table(t: np.ndarray, n: int) -> bool:
    if not t[0]:
        return False
    codes = np.arange(t.size, dtype=np.int64)
    g = subset_bitor_values(np.where(t, codes, 0), n)
    return bool(np.all(t[g]))


def _down_closed_table(t: np.ndarray, n: int) -> bool:
    return not np.any(superset_or(t, n) & ~t)


class _Space:
    """Bitmask arithmetic over the evaluations of a fixed variable list."""

    def __init__(self, names: tuple[str, ...]):
        if len(names) > SPACE_LIMIT:
            raise CapExceeded(f"{len(names)} variables exceed the evaluator limit {SPACE_LIMIT}")
        self.names = names
        self.n = len(names)
        self.pos = {v: j for j, v in enumerate(names)}
        self.size = 1 << self.n
        self.full = (1 << self.size) - 1
        self._e = np.arange(self.size, dtype=np.int64)
        self._lit = {}
        self._fib = {}

    def bit(self, v: str) -> np.ndarray:
        return ((self._e >> (self.n - 1 - self.pos[v])) & 1).astype(bool)

    def lit(self, v: str) -> int:
        m = self._lit.get(v)
        if m is None:
            arr = self.bit(v)
            m = 0
            for i in np.flatnonzero(arr):
                m |= 1 << int(i)
            self._lit[v] = m
        return m

    def _flip(self, x: int, v: str) -> int:
        d = 1 << (self.n - 1 - self.pos[v])
        m1 = self.lit(v)
        return ((x & m1) >> d) | ((x & ~m1 & self.full) << d)

    def smooth(self, x: int, v: str) -> int:
        """All evaluations agreeing with a member of ``x`` outside ``v``."""
        return x | self._flip(x, v)

    def squeeze(self, x: int, v: str) -> int:
        """Members of ``x`` whose ``v``-twin is also a member."""
        return x & self._flip(x, v)

    def fibers(self, names: tuple[str, ...]) -> list[int]:
        f = self._fib.get(names)
        if f is None:
            code = np.zeros(self.size, dtype=np.int64)
            for v in names:
                code = (code << 1) | self.bit(v).astype(np.int64)
            f = [0] * (1 << len(names))
            for i, c in enumerate(code.tolist()):
                f[c] |= 1 << i
            self._fib[names] = f
        return f

    def project(self, x: int, names: tuple[str, ...]) -> int:
        out = 0
        for v, fib in enumerate(self.fibers(names)):
            if x & fib:
                out |= 1 << v
        return out

    def preimage(self, code: int, names: tuple[str, ...]) -> int:
        fib = self.fibers(names)
        out = 0
        for v in iter_bits(code):
            out |= fib[v]
        return out

    def classes(self, x: int, names: tuple[str, ...]) -> list[int]:
        return [x & f for f in self.fibers(names) if x & f]


def _and_parts(f):
    if isinstance(f, And):
        return _and_parts(f.left) + _and_parts(f.right)
    return [f]


class Engine:
    """Evaluator for one formula; caches are keyed by node identity."""

    def __init__(self, root, scope: tuple[str, ...] = (), table_limit: int | None = None):
        self.root = root
        self.table_limit = max_scope() if table_limit is None else table_limit
        order = list(dict.fromkeys(scope))
        for g in root.walk():
            for v in sorted(all_vars(g)) if isinstance(g, Atom) else _node_vars(g):
                if v not in order:
                    order.append(v)
        self.rank = {v: i for i, v in enumerate(order)}
        self.order = tuple(order)
        self._fv = {}
        self._tabable = {}
        self._tables = {}
        self._kernels = {}
        self._cons = {}
        self._props = {}
        self._flat = {}
        self._env = {}
        self._synth = {}
        self._keep = []
        self._space = None
        self._maps = {}

    # static information -------------------------------------------------

    def fv(self, f) -> tuple[str, ...]:
        r = self._fv.get(id(f))
        if r is None:
            r = tuple(sorted(free_vars(f), key=self.rank.__getitem__))
            self._fv[id(f)] = r
        return r

    def tableable(self, f) -> bool:
        r = self._tabable.get(id(f))
        if r is None:
            r = len(self.fv(f)) <= self.table_limit and all(
                self.tableable(c) for c in _sub(f)
            )
            self._tabable[id(f)] = r
        return r

    def is_flat(self, f) -> bool:
        r = self._flat.get(id(f))
        if r is None:
            if isinstance(f, (Top, Bot, Lit)):
                r = True
            elif isinstance(f, (And, Or, Exists, Forall)):
                r = all(self.is_flat(c) for c in f.children())
            else:
                r = False
            self._flat[id(f)] = r
        return r

    def closure(self, f) -> tuple[bool, bool]:
        """(downward closed, union closed with the empty team), soundly."""
        r = self._props.get(id(f))
        if r is not None:
            return r
        if self.is_flat(f):
            r = (True, True)
        elif self.tableable(f):
            t = self.table(f)
            n = 1 << len(self.fv(f))
            r = (_down_closed_table(t, n), _union_closed_table(t, n))
        elif isinstance(f, Atom):
            c = self.constraint(f)
            r = (c.downward_closed, c.union_closed)
        elif isinstance(f, (Might, SMight)):
            r = (False, True)
        elif isinstance(f, NE) or isinstance(f, EMight):
            r = (False, False)
        elif isinstance(f, GOr):
            dl, _ = self.closure(f.left)
            dr, _ = self.closure(f.right)
            r = (dl and dr, False)
        else:
            cs = [self.closure(c) for c in f.children()]
            r = (all(d for d, _ in cs), all(u for _, u in cs))
        self._props[id(f)] = r
        return r

    def constraint(self, atom):
        c = self._cons.get(id(atom))
        if c is None:
            c = build_constraint(atom, self.fv(atom))
            self._cons[id(atom)] = c
        return c

    # tables ---------------------------------------------------------------

    def _proj_map(self, src: tuple, dst: tuple) -> np.ndarray:
        """Team code over ``src`` -> team code of its projection onto ``dst``."""
        key = ("p", src, dst)
        r = self._maps.get(key)
        if r is None:
            if src == dst:
                r = np.arange(1 << (1 << len(src)), dtype=np.int64)
            else:
                cols = dict(zip(src, local_eval_bits(len(src))))
                e = np.zeros(1 << len(src), dtype=np.int64)
                for v in dst:
                    e = (e << 1) | cols[v].astype(np.int64)
                n = 1 << len(src)
                vals = np.zeros(1 << n, dtype=np.int64)
                for i in range(n):
                    vals[1 << i] = 1 << int(e[i])
                r = subset_bitor_values(vals, n)
            self._maps[key] = r
        return r

    def _cyl_map(self, src: tuple, dst: tuple) -> np.ndarray:
        """Team code over ``src`` -> code of its cylinder over ``dst`` ⊇ ``src``."""
        key = ("c", src, dst)
        r = self._maps.get(key)
        if r is None:
            cols = dict(zip(dst, local_eval_bits(len(dst))))
            e = np.zeros(1 << len(dst), dtype=np.int64)
            for v in src:
                e = (e << 1) | cols[v].astype(np.int64)
            n = 1 << len(src)
            vals = np.zeros(1 << n, dtype=np.int64)
            for i in range(n):
                m = 0
                for j in np.flatnonzero(e == i):
                    m |= 1 << int(j)
                vals[1 << i] = m
            r = subset_bitor_values(vals, n)
            self._maps[key] = r
        return r

    def _lift(self, child, names) -> np.ndarray:
        t = self.table(child)
        return t[self._proj_map(names, self.fv(child))]

    def table(self, f) -> np.ndarray:
        """Satisfaction vector of ``f`` over team codes on ``fv(f)``."""
        r = self._tables.get(id(f))
        if r is not None:
            return r
        if not self.tableable(f):
            raise CapExceeded(f"subformula with {len(self.fv(f))} free variables exceeds the table limit")
        names = self.fv(f)
        n = 1 << len(names)
        codes = np.arange(1 << n, dtype=np.int64)
        if isinstance(f, Top):
            r = np.ones(1 << n, dtype=bool)
        elif isinstance(f, Bot):
            r = codes == 0
        elif isinstance(f, Lit):
            mask = 0
            for i in np.flatnonzero(local_eval_bits(1)[0] == f.pos):
                mask |= 1 << int(i)
            r = (codes & ~mask) == 0
        elif isinstance(f, NE):
            r = codes != 0
        elif isinstance(f, Atom):
            r = self.constraint(f).table()
        elif isinstance(f, And):
            r = self._lift(f.left, names) & self._lift(f.right, names)
        elif isinstance(f, GOr):
            r = self._lift(f.left, names) | self._lift(f.right, names)
        elif isinstance(f, Or):
            a = subset_sum(self._lift(f.left, names).astype(np.int64), n)
            b = subset_sum(self._lift(f.right, names).astype(np.int64), n)
            r = subset_mobius(a * b, n) > 0
        elif isinstance(f, Exists):
            body = self.table(f.body)
            r = np.zeros(1 << n, dtype=bool)
            r[self._proj_map(self.fv(f.body), names)[body]] = True
        elif isinstance(f, Forall):
            r = self.table(f.body)[self._cyl_map(names, self.fv(f.body))]
        elif isinstance(f, (Might, EMight)):
            b = self._lift(f.body, names).copy()
            b[0] = False
            r = subset_or(b, n)
            r[0] = isinstance(f, Might)
        elif isinstance(f, SMight):
            b = self._lift(f.body, names)
            single = 0
            for i in range(n):
                if b[1 << i]:
                    single |= 1 << i
            r = (codes == 0) | ((codes & single) != 0)
        else:
            raise TypeError(f"unknown node {f!r}")
        r.setflags(write=False)
        self._tables[id(f)] = r
        return r

    def kernel_table(self, f) -> np.ndarray:
        """Largest satisfying subteam of every team, for union closed ``f``."""
        r = self._kernels.get(id(f))
        if r is None:
            t = self.table(f)
            codes = np.arange(t.size, dtype=np.int64)
            r = subset_bitor_values(np.where(t, codes, 0), 1 << len(self.fv(f)))
            self._kernels[id(f)] = r
        return r

    # single teams -------------------------------------------------------

    @property
    def space(self) -> _Space:
        if self._space is None:
            self._space = _Space(self.order)
        return self._space

    def team_mask(self, names: tuple[str, ...], code: int) -> int:
        return self.space.preimage(code, names)

    def flat_mask(self, f) -> int:
        """Evaluations satisfying a flat formula classically."""
        r = self._env.get(("flat", id(f)))
        if r is not None:
            return r
        sp = self.space
        if isinstance(f, Top):
            r = sp.full
        elif isinstance(f, Bot):
            r = 0
        elif isinstance(f, Lit):
            r = sp.lit(f.var) if f.pos else sp.full & ~sp.lit(f.var)
        elif isinstance(f, And):
            r = self.flat_mask(f.left) & self.flat_mask(f.right)
        elif isinstance(f, Or):
            r = self.flat_mask(f.left) | self.flat_mask(f.right)
        elif isinstance(f, Exists):
            r = sp.smooth(self.flat_mask(f.body), f.var)
        elif isinstance(f, Forall):
            r = sp.squeeze(self.flat_mask(f.body), f.var)
        else:
            raise TypeError(f"not flat: {f!r}")
        self._env[("flat", id(f))] = r
        return r

    def envelope(self, f) -> int:
        """Superset of every evaluation occurring in a team satisfying ``f``."""
        if self.is_flat(f):
            return self.flat_mask(f)
        r = self._env.get(("env", id(f)))
        if r is not None:
            return r
        sp = self.space
        if isinstance(f, And):
            r = self.envelope(f.left) & self.envelope(f.right)
        elif isinstance(f, (Or, GOr)):
            r = self.envelope(f.left) | self.envelope(f.right)
        elif isinstance(f, Exists):
            r = sp.smooth(self.envelope(f.body), f.var)
        elif isinstance(f, Forall):
            r = sp.squeeze(self.envelope(f.body), f.var)
        else:
            r = sp.full
        self._env[("env", id(f))] = r
        return r

    def sat(self, f, x: int) -> bool:
        """Does the team ``x`` (a mask over all evaluations) satisfy ``f``?"""
        sp = self.space
        if self.is_flat(f):
            return not x & ~self.flat_mask(f)
        if self.tableable(f):
            return bool(self.table(f)[sp.project(x, self.fv(f))])
        if isinstance(f, And):
            return self.sat(f.left, x) and self.sat(f.right, x)
        if isinstance(f, GOr):
            return self.sat(f.left, x) or self.sat(f.right, x)
        if isinstance(f, Or):
            return self._sat_or(f, x)
        if isinstance(f, Forall):
            return self.sat(f.body, sp.smooth(x, f.var))
        if isinstance(f, Exists):
            return self._sat_exists(f, x)
        if isinstance(f, NE):
            return x != 0
        if isinstance(f, Atom):
            return self.constraint(f).check(sp.project(x, self.fv(f)))
        if isinstance(f, (Might, EMight)):
            if x == 0:
                return isinstance(f, Might)
            return self._some_nonempty(f.body, x)
        if isinstance(f, SMight):
            return x == 0 or any(self.sat(f.body, c) for c in sp.classes(x, self.fv(f.body)))
        raise TypeError(f"unknown node {f!r}")

    def kernel(self, f, x: int) -> int:
        """Largest subteam of ``x`` satisfying a union closed ``f``."""
        sp = self.space
        if self.is_flat(f):
            return x & self.flat_mask(f)
        if self.tableable(f):
            names = self.fv(f)
            return x & sp.preimage(int(self.kernel_table(f)[sp.project(x, names)]), names)
        if isinstance(f, Atom):
            names = self.fv(f)
            return x & sp.preimage(self.constraint(f).kernel(sp.project(x, names)), names)
        if isinstance(f, Or):
            return self.kernel(f.left, x) | self.kernel(f.right, x)
        if isinstance(f, And):
            while True:
                y = self.kernel(f.right, self.kernel(f.left, x))
                if y == x:
                    return x
                x = y
        if isinstance(f, Exists):
            k = self.kernel(f.body, sp.smooth(x, f.var))
            return x & sp.smooth(k, f.var)
        if isinstance(f, Forall):
            while True:
                k = self.kernel(f.body, sp.smooth(x, f.var))
                y = x & sp.squeeze(k, f.var)
                if y == x:
                    return x
                x = y
        if isinstance(f, (Might, SMight)):
            return x if self.sat(f, x) else 0
        raise TypeError(f"no kernel for {f!r}")

    def _some_nonempty(self, f, x: int) -> bool:
        down, union = self.closure(f)
        if union:
            return self.kernel(f, x) != 0
        cls = self.space.classes(x, self.fv(f))
        if down:
            return any(self.sat(f, c) for c in cls)
        for y in self._unions(cls, nonempty=True):
            if self.sat(f, y):
                return True
        return False

    def _unions(self, cls: list[int], nonempty=False):
        if len(cls) > 20 or (1 << len(cls)) > ENUM_LIMIT:
            raise CapExceeded(f"enumeration over {len(cls)} evaluation classes")
        for bits in range(1 if nonempty else 0, 1 << len(cls)):
            y = 0
            for i in iter_bits(bits):
                y |= cls[i]
            yield y

    def _sat_or(self, f, x: int) -> bool:
        sp = self.space
        l, r = f.left, f.right
        el, er = x & self.envelope(l), x & self.envelope(r)
        if el | er != x:
            return False
        dl, ul = self.closure(l)
        dr, ur = self.closure(r)
        for a, b, ea, ub_, db_ in ((l, r, el, ur, dr), (r, l, er, ul, dl)):
            if self.is_flat(a):
                need = x & ~ea
                if db_:
                    return self.sat(b, need)
                if ub_:
                    return not need & ~self.kernel(b, x)
        if ul and ur:
            return self.kernel(l, x) | self.kernel(r, x) == x
        if ul and dr:
            return self.sat(r, x & ~self.kernel(l, x))
        if ur and dl:
            return self.sat(l, x & ~self.kernel(r, x))
        only_l, only_r, both = x & ~er, x & ~el, el & er
        cls = sp.classes(both, self.fv(f))
        if dl and dr:
            for y in self._unions(cls):
                if self.sat(l, only_l | y) and self.sat(r, only_r | (both & ~y)):
                    return True
            return False
        if 3 ** len(cls) > ENUM_LIMIT:
            raise CapExceeded(f"split enumeration over {len(cls)} evaluation classes")
        for choice in product((0, 1, 2), repeat=len(cls)):
            s = only_l
            t = only_r
            for c, k in zip(cls, choice):
                if k != 1:
                    s |= c
                if k != 0:
                    t |= c
            if self.sat(l, s) and self.sat(r, t):
                return True
        return False

    def _rest(self, body, parts):
        """A single tableable node standing for the non-flat conjuncts."""
        r = self._synth.get(id(body))
        if r is None:
            rest = [p for p in parts if not self.is_flat(p)]
            node = rest[0]
            for p in rest[1:]:
                node = And(node, p)
            # synthetic nodes must stay alive: caches are keyed by id
            self._keep.append(node)
            r = node if self.tableable(node) else False
            self._synth[id(body)] = r
        return r or None

    def _sat_exists(self, f, x: int) -> bool:
        sp = self.space
        bound = []
        body = f
        while isinstance(body, Exists):
            bound.append(body.var)
            body = body.body
        c = x
        for v in bound:
            c = sp.smooth(c, v)

        def covers(u):
            for v in bound:
                u = sp.smooth(u, v)
            return u == c

        if self.is_flat(body):
            return covers(c & self.flat_mask(body))
        down, union = self.closure(body)
        if union:
            return covers(self.kernel(body, c))
        parts = _and_parts(body)
        rest = self._rest(body, parts)
        if rest is not None:
            avail = c
            for p in parts:
                if self.is_flat(p):
                    avail &= self.flat_mask(p)
            names = self.fv(rest)
            table = self.table(rest)
            d_rest, _ = self.closure(rest)
            if d_rest:
                for m in _maximal_codes(table, 1 << len(names)):
                    if covers(avail & sp.preimage(m, names)):
                        return True
                return False
            for code in np.flatnonzero(table).tolist():
                u = avail & sp.preimage(code, names)
                if sp.project(u, names) == code and covers(u):
                    return True
            return False
        cls = sp.classes(c, self.fv(body))
        return any(covers(u) and self.sat(body, u) for u in self._unions(cls))


def _maximal_codes(table: np.ndarray, n: int) -> list[int]:
    above = superset_or(table, n)
    strict = np.zeros_like(above)
    for i in range(n):
        # some member strictly above: a member above code | (1<<i) for a missing bit i
        idx = np.arange(table.size)
        missing = (idx >> i) & 1 == 0
        strict[missing] |= above[idx[missing] | (1 << i)]
    return np.flatnonzero(table & ~strict).tolist()


def _sub(f):
    return () if isinstance(f, Atom) else f.children()


def _node_vars(g):
    if isinstance(g, Lit):
        return (g.var,)
    if isinstance(g, (Exists, Forall)):
        return (g.var,)
    return ()
