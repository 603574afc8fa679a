"""Vertices of the Lucas cube and their weight counts.

A vertex is a binary word of length ``n`` with no two cyclically adjacent
1s. The words are kept as bitmasks, bit ``j`` holding position ``j + 1``.
For ``n = 1`` the single position is both first and last, so the word
``1`` is excluded and the cube has the single vertex ``0``.
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .errors import UsageError

_CHUNK = 1 << 22


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def _rotate_left(x: np.ndarray, n: int) -> np.ndarray:
    full = (1 << n) - 1
    return ((x << 1) | (x >> (n - 1))) & full


@lru_cache(maxsize=None)
def lucas_vertex_masks(n: int) -> np.ndarray:
    """Brute force over all ``2^n`` words; sorted, read-only uint64 array."""
    if n < 1:
        raise UsageError(f"n must be positive, got {n}")
    if n == 1:
        out = np.zeros(1, dtype=np.uint64)
    else:
        parts = []
        for start in range(0, 1 << n, _CHUNK):
            x = np.arange(start, min(start + _CHUNK, 1 << n), dtype=np.uint64)
            parts.append(x[(x & _rotate_left(x, n)) == 0])
        out = np.concatenate(parts)
    out.setflags(write=False)
    return out


def lucas_vertices(n: int) -> set[tuple[int, ...]]:
    return {
        tuple((m >> j) & 1 for j in range(n))
        for m in lucas_vertex_masks(n).tolist()
    }


def lucas_number(n: int) -> int:
    """``L_n`` via ``L_1 = 1, L_2 = 3, L_n = L_{n-1} + L_{n-2}``."""
    a, b = 2, 1
    for _ in range(n - 1):
        a, b = b, a + b
    return b


def weight_count(n: int, k: int) -> int:
    """Vertices of weight ``k``: ``C(n-k, k) * n / (n-k)``."""
    if k < 0 or k > n // 2:
        return 0
    if k == 0:
        return 1
    num = binomial(n - k, k) * n
    q, r = divmod(num, n - k)
    assert r == 0, f"C({n - k},{k})*{n} not divisible by {n - k}"
    return q


def weight_count_one_at(n: int, k: int, i: int) -> int:
    """Weight-``k`` vertices with a 1 at position ``i``: ``C(n-k, k) * k / (n-k)``."""
    if not 1 <= i <= n:
        raise UsageError(f"position {i} outside [1, {n}]")
    if k <= 0 or k > n // 2:
        return 0
    num = binomial(n - k, k) * k
    q, r = divmod(num, n - k)
    assert r == 0, f"C({n - k},{k})*{k} not divisible by {n - k}"
    return q


def weight_count_zero_at(n: int, k: int, i: int) -> int:
    if not 1 <= i <= n:
        raise UsageError(f"position {i} outside [1, {n}]")
    if k < 0 or k > n // 2:
        return 0
    return binomial(n - k, k)


def brute_force_counts(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Counts by weight, from enumeration.

    Returns ``(total, one_at)`` where ``total[k]`` counts weight-``k``
    vertices and ``one_at[i-1, k]`` counts those with a 1 at position ``i``.
    """
    masks = lucas_vertex_masks(n)
    weights = np.bitwise_count(masks).astype(np.int64)
    size = n + 1
    total = np.bincount(weights, minlength=size)
    one_at = np.zeros((n, size), dtype=np.int64)
    for j in range(n):
        bit = ((masks >> np.uint64(j)) & np.uint64(1)).astype(bool)
        one_at[j] = np.bincount(weights[bit], minlength=size)
    return total, one_at
