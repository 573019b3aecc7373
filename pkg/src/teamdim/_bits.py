"""Bit-level helpers shared by the set-family and semantics code.

Sets over a base of size n are Python ints; element i is bit i.
Dense indicator vectors over all 2^n subsets are numpy bool arrays.
"""
from __future__ import annotations

import numpy as np


def popcount(x: int) -> int:
    return bin(x).count("1")


def iter_bits(x: int):
    i = 0
    while x:
        if x & 1:
            yield i
        x >>= 1
        i += 1


def bits(x: int) -> list[int]:
    return list(iter_bits(x))


def canon_key(x: int) -> tuple[int, int]:
    """Canonical order on sets: by size, then numeric value."""
    return (popcount(x), x)


def submask_codes(mask: int) -> np.ndarray:
    """All submasks of ``mask`` as int64 codes.

    Index r of the result deposits the bits of r into the positions of
    ``mask`` (a vectorised pdep), so index 2^k - 1 is ``mask`` itself.
    """
    pos = bits(mask)
    r = np.arange(1 << len(pos), dtype=np.int64)
    out = np.zeros_like(r)
    for j, p in enumerate(pos):
        out |= ((r >> j) & 1) << p
    return out


def subset_or(a: np.ndarray, n: int) -> np.ndarray:
    """out[S] = OR of a[R] over R subset of S (in place on a copy)."""
    a = a.copy()
    for i in range(n):
        v = a.reshape(-1, 2, 1 << i)
        v[:, 1, :] |= v[:, 0, :]
    return a


def superset_or(a: np.ndarray, n: int) -> np.ndarray:
    a = a.copy()
    for i in range(n):
        v = a.reshape(-1, 2, 1 << i)
        v[:, 0, :] |= v[:, 1, :]
    return a


def superset_and(a: np.ndarray, n: int) -> np.ndarray:
    a = a.copy()
    for i in range(n):
        v = a.reshape(-1, 2, 1 << i)
        v[:, 0, :] &= v[:, 1, :]
    return a


def subset_and(a: np.ndarray, n: int) -> np.ndarray:
    a = a.copy()
    for i in range(n):
        v = a.reshape(-1, 2, 1 << i)
        v[:, 1, :] &= v[:, 0, :]
    return a


def subset_sum(a: np.ndarray, n: int) -> np.ndarray:
    a = a.copy()
    for i in range(n):
        v = a.reshape(-1, 2, 1 << i)
        v[:, 1, :] += v[:, 0, :]
    return a


def subset_mobius(a: np.ndarray, n: int) -> np.ndarray:
    a = a.copy()
    for i in range(n):
        v = a.reshape(-1, 2, 1 << i)
        v[:, 1, :] -= v[:, 0, :]
    return a


def subset_bitor_values(vals: np.ndarray, n: int) -> np.ndarray:
    """out[S] = bitwise OR of vals[R] over R subset of S."""
    a = vals.copy()
    for i in range(n):
        v = a.reshape(-1, 2, 1 << i)
        v[:, 1, :] |= v[:, 0, :]
    return a


def superset_bitand_values(vals: np.ndarray, n: int) -> np.ndarray:
    a = vals.copy()
    for i in range(n):
        v = a.reshape(-1, 2, 1 << i)
        v[:, 0, :] &= v[:, 1, :]
    return a


def mask_from_indices(idx) -> int:
    m = 0
    for i in idx:
        m |= 1 << int(i)
    return m


def bool_to_int(arr: np.ndarray) -> int:
    """Pack a bool vector (index i -> bit i) into an int."""
    if arr.size == 0:
        return 0
    packed = np.packbits(arr.astype(np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def int_to_bool(x: int, size: int) -> np.ndarray:
    nbytes = max(1, (size + 7) // 8)
    raw = np.frombuffer(x.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:size].astype(bool)
