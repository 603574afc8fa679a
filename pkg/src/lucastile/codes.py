"""Circulant matrices over Z_4 and the code sets built from them.

Words are plain tuples of residues in ``{0, 1, 2, 3}``. Coordinates are
1-based in the public API (``row 1``, ``position i``) and 0-based in the
tuples themselves. Every :class:`CodeSet` keeps its words sorted
lexicographically, which is the canonical order used by reports.

For the exhaustive checks a word can also be packed into a single integer,
two bits per coordinate, coordinate ``j`` occupying bits ``2j`` and
``2j + 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import UsageError

ResidueVector = tuple[int, ...]

#: Largest dimension whose packed words fit an unsigned 64-bit integer.
MAX_PACKED_DIM = 31


def as_residue_vector(entries: Iterable[int]) -> ResidueVector:
    word = tuple(int(e) for e in entries)
    if not word:
        raise UsageError("a residue vector needs at least one entry")
    for e in word:
        if e not in (0, 1, 2, 3):
            raise UsageError(f"entry {e} is not a residue mod 4")
    return word


def require_odd(n: int, minimum: int = 3) -> None:
    if n < minimum or n % 2 == 0:
        raise UsageError(f"n must be odd and >= {minimum}, got {n}")


@dataclass(frozen=True)
class CirculantMatrix:
    n: int
    rows: tuple[ResidueVector, ...]

    def row(self, i: int) -> ResidueVector:
        """Row ``i`` (1-based)."""
        return self.rows[i - 1]

    def as_array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64).reshape(self.n, self.n)


@dataclass(frozen=True)
class CodeSet:
    n: int
    words: tuple[ResidueVector, ...]
    label: str = "other"

    @classmethod
    def from_words(cls, n: int, words: Iterable[Sequence[int]], label: str = "other") -> "CodeSet":
        normalized = set()
        for w in words:
            w = as_residue_vector(w)
            if len(w) != n:
                raise UsageError(f"word {w} does not have dimension {n}")
            normalized.add(w)
        return cls(n, tuple(sorted(normalized)), label)

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __contains__(self, word) -> bool:
        return tuple(word) in self.as_set()

    def as_set(self) -> frozenset[ResidueVector]:
        return frozenset(self.words)

    def as_array(self) -> np.ndarray:
        """Unpacked ``(len, n)`` uint8 array; the portable reference layout."""
        return np.array(self.words, dtype=np.uint8).reshape(len(self.words), self.n)

    def packed(self) -> np.ndarray:
        return pack_array(self.as_array())


def pack_word(word: Sequence[int]) -> int:
    packed = 0
    for j, e in enumerate(word):
        packed |= (int(e) & 3) << (2 * j)
    return packed


def unpack_word(packed: int, n: int) -> ResidueVector:
    return tuple((packed >> (2 * j)) & 3 for j in range(n))


def pack_array(words: np.ndarray) -> np.ndarray:
    n = words.shape[1]
    if n > MAX_PACKED_DIM:
        raise UsageError(f"packed layout supports n <= {MAX_PACKED_DIM}, got {n}")
    if not len(words):
        return np.zeros(0, dtype=np.uint64)
    shifts = 2 * np.arange(n, dtype=np.uint64)
    return np.bitwise_or.reduce(words.astype(np.uint64) << shifts, axis=1)


def circulant_rows(n: int, first_row: Sequence[int]) -> CirculantMatrix:
    first = as_residue_vector(first_row)
    if len(first) != n:
        raise UsageError(f"first row has dimension {len(first)}, expected {n}")
    rows = tuple(first[n - s:] + first[:n - s] for s in range(n))
    return CirculantMatrix(n, rows)


def lagarias_shor_matrix(n: int) -> CirculantMatrix:
    """``circ(1, 2, 0, ..., 0)`` of size ``n``; for ``n = 1`` just ``(1)``."""
    if n < 1:
        raise UsageError(f"n must be positive, got {n}")
    first = (1, 2) + (0,) * (n - 2) if n >= 2 else (1,)
    return circulant_rows(n, first)


def transpose(m: CirculantMatrix) -> CirculantMatrix:
    cols = tuple(tuple(m.rows[r][c] for r in range(m.n)) for c in range(m.n))
    return CirculantMatrix(m.n, cols)


def subset_row_sums(m: CirculantMatrix, label: str = "other") -> CodeSet:
    """All sums of distinct rows mod 4, the empty sum included.

    Subsets are visited in Gray-code order so each step adds or removes a
    single row.
    """
    n = m.n
    cur = [0] * n
    seen = {tuple(cur)}
    members = 0
    for g in range(1, 1 << n):
        bit = (g & -g).bit_length() - 1
        row = m.rows[bit]
        sign = -1 if members >> bit & 1 else 1
        members ^= 1 << bit
        for j in range(n):
            cur[j] = (cur[j] + sign * row[j]) % 4
        seen.add(tuple(cur))
    return CodeSet(n, tuple(sorted(seen)), label)


def filter_even_threes(c: CodeSet) -> CodeSet:
    return CodeSet(c.n, tuple(w for w in c.words if w.count(3) % 2 == 0), "V_e")


def filter_odd_zeros(c: CodeSet) -> CodeSet:
    return CodeSet(c.n, tuple(w for w in c.words if w.count(0) % 2 == 1), "V_o")


def shift_by_twos(c: CodeSet) -> CodeSet:
    return CodeSet.from_words(c.n, (tuple((e + 2) % 4 for e in w) for w in c.words), c.label)


@lru_cache(maxsize=None)
def lagarias_shor_code(n: int) -> CodeSet:
    require_odd(n)
    a = lagarias_shor_matrix(n)
    v_a = subset_row_sums(a)
    v_at = subset_row_sums(transpose(a))
    # distinctness of the subset sums is checked, not assumed
    assert len(v_a) == 2 ** n and len(v_at) == 2 ** n, "subset sums collide"
    even = filter_even_threes(v_a)
    odd = shift_by_twos(filter_odd_zeros(v_at))
    code = CodeSet.from_words(n, even.words + odd.words, "V")
    assert len(code) == 2 ** n, f"Lagarias-Shor code has {len(code)} words, expected {2 ** n}"
    return code


def _path_masks(n: int) -> list[int]:
    # independent sets of the path 0 - 1 - ... - (n-1), as bitmasks
    free, taken = [0], []
    for i in range(n):
        free, taken = free + taken, [m | (1 << i) for m in free]
    return sorted(free + taken)


@lru_cache(maxsize=None)
def independent_set_masks(n: int, cyclic: bool) -> tuple[int, ...]:
    """Bitmasks (bit ``j`` = element ``j + 1``) of the independent sets.

    In the cyclic case elements ``1`` and ``n`` are adjacent, which for
    ``n = 1`` forbids the single element as well.
    """
    if n < 1:
        raise UsageError(f"n must be positive, got {n}")
    masks = _path_masks(n)
    if cyclic:
        ends = 1 | (1 << (n - 1))
        masks = [m for m in masks if m & ends != ends]
    return tuple(masks)


def independent_sets(n: int, cyclic: bool) -> set[frozenset[int]]:
    return {
        frozenset(j + 1 for j in range(n) if m >> j & 1)
        for m in independent_set_masks(n, cyclic)
    }


def masks_to_indicators(masks: Sequence[int], n: int) -> np.ndarray:
    arr = np.asarray(masks, dtype=np.int64)
    return ((arr[:, None] >> np.arange(n)) & 1).astype(np.int64)


def row_sums(m: CirculantMatrix, masks: Sequence[int]) -> np.ndarray:
    """``sum_{j in mask} row_j mod 4`` for each mask, as a ``(len, n)`` array."""
    if not len(masks):
        return np.zeros((0, m.n), dtype=np.uint8)
    return ((masks_to_indicators(masks, m.n) @ m.as_array()) % 4).astype(np.uint8)


@lru_cache(maxsize=None)
def u_array(n: int) -> np.ndarray:
    """Words of ``U(n)`` as a read-only array in canonical order."""
    require_odd(n)
    masks = [m for m in independent_set_masks(n, cyclic=True) if m]
    words = row_sums(lagarias_shor_matrix(n), masks)
    words = words[np.lexsort(words.T[::-1])]
    words.setflags(write=False)
    return words


def enumerate_U(n: int) -> CodeSet:
    words = u_array(n)
    return CodeSet(n, tuple(map(tuple, words.tolist())), "U")
