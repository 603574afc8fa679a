"""Checks that a code over Z_4 yields a cube tiling ``[0,2)^n + (V - 1 + 4Z^n)``.

Two routes, kept independent of each other:

* :func:`twin_pair_check` uses the pairwise criterion. Two side-2 cubes whose
  translates agree mod 4 nowhere by exactly 2 overlap, and ``2^n`` pairwise
  disjoint side-2 cubes fill the torus ``[0,4)^n``.
* :func:`voxel_cover_check` counts, for every unit voxel of the torus, how
  many translates cover it.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .codes import MAX_PACKED_DIM, CodeSet, ResidueVector, unpack_word
from .errors import VoxelBudgetError

DEFAULT_VOXEL_BUDGET = 4 ** 9
VOXEL_BUDGET_ENV = "LUCASTILE_VOXEL_BUDGET"


def default_voxel_budget() -> int:
    raw = os.environ.get(VOXEL_BUDGET_ENV)
    return int(raw) if raw else DEFAULT_VOXEL_BUDGET


@dataclass(frozen=True)
class TilingVerdict:
    method: str  # "twin_pair" or "voxel_cover"
    n: int
    ok: bool
    reason: Optional[str] = None  # size | pair | uncovered | overlap
    witness: Optional[tuple] = None

    def __post_init__(self):
        if not self.ok and self.witness is None:
            raise ValueError("a failed verdict must carry a witness")


# low bit of every 2-bit field
_LOW_BITS = np.uint64(int("01" * 32, 2))


def _twin_pair_packed(code: CodeSet) -> Optional[tuple[ResidueVector, ResidueVector]]:
    packed = code.packed()
    one = np.uint64(1)
    for a in range(len(packed) - 1):
        x = packed[a + 1:] ^ packed[a]
        # a field differs by 2 mod 4 iff its high bit flips and its low bit does not
        twin = (x >> one) & ~x & _LOW_BITS
        bad = np.flatnonzero(twin == 0)
        if bad.size:
            b = a + 1 + int(bad[0])
            return unpack_word(int(packed[a]), code.n), unpack_word(int(packed[b]), code.n)
    return None


def _twin_pair_unpacked(code: CodeSet) -> Optional[tuple[ResidueVector, ResidueVector]]:
    words = code.as_array().astype(np.int16)
    for a in range(len(words) - 1):
        diff = (words[a + 1:] - words[a]) % 4
        bad = np.flatnonzero(~(diff == 2).any(axis=1))
        if bad.size:
            return code.words[a], code.words[a + 1 + int(bad[0])]
    return None


def twin_pair_check(code: CodeSet, packed: Optional[bool] = None) -> TilingVerdict:
    """Size ``2^n`` and a coordinate difference of exactly 2 for every pair.

    ``packed`` selects the bit-packed layout; by default it is used whenever
    the dimension allows it.
    """
    n = code.n
    if len(code) != 2 ** n:
        return TilingVerdict("twin_pair", n, False, "size", (len(code),))
    if packed is None:
        packed = n <= MAX_PACKED_DIM
    pair = _twin_pair_packed(code) if packed else _twin_pair_unpacked(code)
    if pair is not None:
        return TilingVerdict("twin_pair", n, False, "pair", pair)
    return TilingVerdict("twin_pair", n, True)


def voxel_counts(code: CodeSet, budget: Optional[int] = None) -> np.ndarray:
    """Cover multiplicity of each voxel of ``[0,4)^n``, indexed ``sum x_j 4^j``."""
    n = code.n
    budget = default_voxel_budget() if budget is None else budget
    if 4 ** n > budget:
        raise VoxelBudgetError(f"4^{n} voxels exceed the voxel budget of {budget}")
    corners = ((np.arange(2 ** n)[:, None] >> np.arange(n)) & 1).astype(np.int64)
    powers = 4 ** np.arange(n, dtype=np.int64)
    counts = np.zeros(4 ** n, dtype=np.int64)
    words = code.as_array().astype(np.int64)
    chunk = max(1, (1 << 20) // (2 ** n))
    for start in range(0, len(words), chunk):
        block = words[start:start + chunk]
        # the tile [0,2)^n + v - 1 covers voxels with x_j in {v_j - 1, v_j} mod 4
        cells = (block[:, None, :] - 1 + corners[None, :, :]) % 4
        counts += np.bincount((cells @ powers).ravel(), minlength=4 ** n)
    return counts


def voxel_cover_check(code: CodeSet, budget: Optional[int] = None) -> TilingVerdict:
    n = code.n
    counts = voxel_counts(code, budget)
    bad = np.flatnonzero(counts != 1)
    if bad.size:
        idx = int(bad[0])
        voxel = tuple((idx // 4 ** j) % 4 for j in range(n))
        reason = "uncovered" if counts[idx] == 0 else "overlap"
        return TilingVerdict("voxel_cover", n, False, reason, voxel)
    return TilingVerdict("voxel_cover", n, True)


def disjoint_from_base(v) -> bool:
    """True iff some entry is 3, so ``[0,2)^n + v - 1`` misses ``[0,2)^n``."""
    return 3 in tuple(v)


def mutate_code(code: CodeSet, rng) -> CodeSet:
    """Replace one word, chosen by ``rng``, with a uniformly random word."""
    words = list(code.words)
    words[rng.randrange(len(words))] = tuple(rng.randrange(4) for _ in range(code.n))
    return CodeSet.from_words(code.n, words, "other")
