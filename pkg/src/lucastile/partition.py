"""Boxes cut out of the base cube ``[0,2)^n`` by the tiling.

A translate ``[0,2)^n + v - 1`` meets the base cube coordinatewise in
``[0,1)``, ``[0,2)`` or ``[1,2)`` when ``v_i`` is 0, 1 or 2, and not at all
when ``v_i = 3``. The factor of a box is therefore the source entry itself,
which is how :class:`Factor` is numbered.

All volumes are exact Python integers. The partition and cylinder checks
work on the ``2^n`` unit voxels of ``[0,2)^n``; voxel ``x`` is the bitmask
with bit ``j`` set when ``x_{j+1} = 1``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .codes import (
    CodeSet,
    ResidueVector,
    independent_set_masks,
    lagarias_shor_matrix,
    require_odd,
    row_sums,
    u_array,
)
from .errors import UsageError


class Factor(enum.IntEnum):
    LO = 0  # [0,1)
    FULL = 1  # [0,2)
    HI = 2  # [1,2)


LO_OR_HI = (Factor.LO, Factor.HI)

Which = Union[Factor, Sequence[Factor]]


@dataclass(frozen=True)
class PartBox:
    factors: tuple[Factor, ...]
    source: ResidueVector

    @property
    def volume(self) -> int:
        return 2 ** sum(f is Factor.FULL for f in self.factors)


def intersect_with_base(v) -> Optional[PartBox]:
    v = tuple(v)
    if 3 in v:
        return None
    return PartBox(tuple(Factor(e) for e in v), v)


@dataclass(frozen=True, eq=False)
class BoxFamily:
    """Boxes stored by their source words, one row per box."""

    n: int
    sources: np.ndarray
    label: str = "F"

    def __post_init__(self):
        if self.sources.ndim != 2 or self.sources.shape[1] != self.n:
            raise ValueError("sources must be a (boxes, n) array")
        if (self.sources > 2).any():
            raise ValueError("box sources must not contain 3")
        self.sources.setflags(write=False)

    def __len__(self) -> int:
        return len(self.sources)

    @property
    def boxes(self) -> tuple[PartBox, ...]:
        return tuple(intersect_with_base(w) for w in self.sources.tolist())

    def full_counts(self) -> np.ndarray:
        return (self.sources == Factor.FULL).sum(axis=1)


def _family(n: int, words: np.ndarray, label: str) -> BoxFamily:
    return BoxFamily(n, np.ascontiguousarray(words, dtype=np.uint8), label)


@lru_cache(maxsize=None)
def build_F(n: int) -> BoxFamily:
    require_odd(n)
    extra = np.array([[0] * n, [2] * n], dtype=np.uint8)
    return _family(n, np.vstack([extra[:1], u_array(n), extra[1:]]), "F")


def build_F1() -> BoxFamily:
    """The one-dimensional family ``{[0,1), [1,2)}`` used when ``n - 2 = 1``."""
    return _family(1, np.array([[0], [2]]), "F")


def volume_sum(fam: BoxFamily) -> int:
    counts = np.bincount(fam.full_counts(), minlength=1) if len(fam) else []
    return sum(int(c) << k for k, c in enumerate(counts))


def _factor_set(which: Which) -> tuple[int, ...]:
    if isinstance(which, Factor):
        return (int(which),)
    return tuple(int(Factor(w)) for w in which)


def subfamily(fam: BoxFamily, i: int, which: Which) -> BoxFamily:
    """Boxes whose ``i``-th factor (1-based) is ``which`` or one of ``which``."""
    if not 1 <= i <= fam.n:
        raise UsageError(f"coordinate {i} outside [1, {fam.n}]")
    col = fam.sources[:, i - 1]
    mask = np.isin(col, _factor_set(which))
    return BoxFamily(fam.n, fam.sources[mask], fam.label)


def weight_census(fam: BoxFamily) -> dict[int, int]:
    counts = np.bincount(fam.full_counts()) if len(fam) else []
    return {k: int(c) for k, c in enumerate(counts) if c}


def voxel_cover(fam: BoxFamily) -> np.ndarray:
    """Number of boxes covering each unit voxel of ``[0,2)^n``."""
    n = fam.n
    counts = np.zeros(1 << n, dtype=np.int64)
    bits = np.arange(n)
    weight = np.int64(1) << bits
    full = fam.sources == Factor.FULL
    hi = (fam.sources == Factor.HI).astype(np.int64) @ weight
    fcount = full.sum(axis=1)
    for f in np.unique(fcount).tolist():
        rows = np.flatnonzero(fcount == f)
        # positions of the Full factors, one row per box
        pos = np.nonzero(full[rows])[1].reshape(len(rows), f)
        t = np.arange(1 << f, dtype=np.int64)
        spread = ((t[:, None] >> np.arange(f)) & 1)  # (2^f, f)
        offsets = spread @ (np.int64(1) << pos).T  # (2^f, boxes)
        counts += np.bincount((offsets + hi[rows]).ravel(), minlength=1 << n)
    return counts


def is_partition(fam: BoxFamily) -> bool:
    """Every voxel of ``[0,2)^n`` lies in exactly one box."""
    return bool((voxel_cover(fam) == 1).all())


def is_disjoint(fam: BoxFamily) -> bool:
    return bool((voxel_cover(fam) <= 1).all())


def cylinder_check(fam: BoxFamily, i: int) -> bool:
    """Each axis-``i`` column of two voxels is covered wholly or not at all."""
    if not 1 <= i <= fam.n:
        raise UsageError(f"coordinate {i} outside [1, {fam.n}]")
    covered = voxel_cover(fam) > 0
    low = np.arange(1 << fam.n)
    low = low[(low >> (i - 1)) & 1 == 0]
    return bool((covered[low] == covered[low | (1 << (i - 1))]).all())


def _cycle_row_masks(n: int) -> list[int]:
    # nonempty independent sets of the cycle on rows 1..n-1
    return [m for m in independent_set_masks(n - 1, cyclic=True) if m]


@lru_cache(maxsize=None)
def build_G(n: int) -> BoxFamily:
    """Boxes of ``F(n)`` from nonempty non-adjacent sums of ``r_1 .. r_{n-1}``.

    ``r_1`` and ``r_{n-1}`` count as adjacent. Defined for odd ``n >= 3``.
    """
    require_odd(n)
    words = row_sums(lagarias_shor_matrix(n), _cycle_row_masks(n))
    words = words[np.lexsort(words.T[::-1])]
    return _family(n, words, "G")


def r_index_sets(n: int) -> list[frozenset[int]]:
    """Independent subsets of the path ``2 .. n-3``, the empty set included."""
    require_odd(n, 5)
    length = n - 4
    return sorted(
        (frozenset(j + 2 for j in range(length) if m >> j & 1)
         for m in independent_set_masks(length, cyclic=False)),
        key=sorted,
    )


def _sum_rows(rows: Sequence[ResidueVector], indices: Iterable[int], n: int) -> ResidueVector:
    acc = [0] * n
    for i in indices:
        for j, e in enumerate(rows[i - 1]):
            acc[j] = (acc[j] + e) % 4
    return tuple(acc)


def build_R(n: int) -> CodeSet:
    rows = lagarias_shor_matrix(n).rows
    return CodeSet.from_words(n, (_sum_rows(rows, I, n) for I in r_index_sets(n)), "R")


def bijection_b(u: Sequence[int], I: Iterable[int]) -> ResidueVector:
    """Map ``u = sum_{i in I} r_i`` to ``sum_{i in I-1} h_i`` over the rows of ``A(n-2)``."""
    u = tuple(u)
    n = len(u)
    require_odd(n, 5)
    I = sorted(set(I))
    if any(not 2 <= i <= n - 3 for i in I):
        raise UsageError(f"index set {I} is not inside 2..{n - 3}")
    if any(b - a == 1 for a, b in zip(I, I[1:])):
        raise UsageError(f"index set {I} contains adjacent rows")
    if _sum_rows(lagarias_shor_matrix(n).rows, I, n) != u:
        raise UsageError(f"{u} is not the sum of rows {I}")
    return _sum_rows(lagarias_shor_matrix(n - 2).rows, (i - 1 for i in I), n - 2)


def bijection_targets(n: int) -> frozenset[ResidueVector]:
    """Words of ``U(n-2)`` together with the zero word whose last entry is 0."""
    m = n - 2
    words = {tuple(w) for w in u_array(m).tolist()} | {(0,) * m}
    return frozenset(w for w in words if w[-1] == 0)


def verify_bijection(n: int) -> bool:
    rows = lagarias_shor_matrix(n).rows
    image = []
    for I in r_index_sets(n):
        image.append(bijection_b(_sum_rows(rows, I, n), I))
    return len(set(image)) == len(image) and set(image) == bijection_targets(n)


def g_hi_sources(n: int) -> frozenset[ResidueVector]:
    """``r_{n-1} + u`` for every ``u`` in ``R``."""
    r_last = lagarias_shor_matrix(n).row(n - 1)
    return frozenset(
        tuple((a + b) % 4 for a, b in zip(u, r_last)) for u in build_R(n).words
    )
