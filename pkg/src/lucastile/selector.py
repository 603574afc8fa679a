"""Star words over ``{0, 1, *}`` and the discrete partition of ``{0,1}^n``.

Words of ``U(n)`` and the two extra words ``0`` and ``(2,...,2)`` become
star words under ``0 -> 0``, ``2 -> 1``, ``1 -> *``. Each star word names a
discrete box, and the boxes partition ``{0,1}^n``. The Lucas cube vertices
pick exactly one point from every box except the all-ones point.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .codes import require_odd, u_array
from .errors import UsageError
from .lucas import lucas_vertex_masks

STAR = "*"
_SUBST = {0: "0", 2: "1", 1: STAR}

StarWord = tuple[str, ...]


def to_star_word(word) -> StarWord:
    try:
        return tuple(_SUBST[int(e)] for e in word)
    except KeyError:
        raise UsageError(f"{tuple(word)} contains a 3 and has no star word") from None


def to_star_code(words: Iterable) -> set[StarWord]:
    return {to_star_word(w) for w in words}


def star_code(n: int) -> list[StarWord]:
    """``L`` plus the all-0 and all-1 words, sorted."""
    require_odd(n)
    words = [(0,) * n, (2,) * n] + [tuple(w) for w in u_array(n).tolist()]
    return sorted(to_star_code(words))


@dataclass(frozen=True)
class DiscreteBox:
    """Points agreeing with ``ones`` outside ``free``; both are bitmasks."""

    n: int
    ones: int
    free: int
    source: StarWord

    @property
    def size(self) -> int:
        return 1 << bin(self.free).count("1")

    def __contains__(self, point: int) -> bool:
        return point & ~self.free == self.ones

    def points(self) -> list[int]:
        out, sub = [], self.free
        while True:
            out.append(self.ones | sub)
            if sub == 0:
                return out
            sub = (sub - 1) & self.free

    def factors(self) -> tuple[frozenset[int], ...]:
        return tuple(
            frozenset((0, 1)) if self.free >> j & 1 else frozenset((self.ones >> j & 1,))
            for j in range(self.n)
        )

    @property
    def is_all_ones(self) -> bool:
        return self.free == 0 and self.ones == (1 << self.n) - 1


def star_to_box(l: StarWord) -> DiscreteBox:
    ones = free = 0
    for j, s in enumerate(l):
        if s == STAR:
            free |= 1 << j
        elif s == "1":
            ones |= 1 << j
        elif s != "0":
            raise UsageError(f"symbol {s!r} is not 0, 1 or *")
    return DiscreteBox(len(l), ones, free, tuple(l))


def canonical_vertex(b: DiscreteBox) -> tuple[int, ...]:
    """The point of ``b`` taking 0 at every free coordinate."""
    if b.is_all_ones:
        raise UsageError("the all-ones box has no canonical vertex")
    return tuple(b.ones >> j & 1 for j in range(b.n))


def boxes(n: int) -> list[DiscreteBox]:
    return [star_to_box(l) for l in star_code(n)]


def point_owners(n: int, family: list[DiscreteBox]) -> tuple[np.ndarray, np.ndarray]:
    """Cover count per point, and the index of the last box covering it."""
    count = np.zeros(1 << n, dtype=np.int64)
    owner = np.full(1 << n, -1, dtype=np.int64)
    for idx, b in enumerate(family):
        pts = np.fromiter(b.points(), dtype=np.int64)
        count[pts] += 1
        owner[pts] = idx
    return count, owner


def verify_discrete_partition(n: int, family: list[DiscreteBox] | None = None) -> bool:
    require_odd(n)
    family = boxes(n) if family is None else family
    count, _ = point_owners(n, family)
    return bool((count == 1).all())


def star_followed_by_one(l: StarWord) -> bool:
    n = len(l)
    return all(l[(j + 1) % n] == "1" for j, s in enumerate(l) if s == STAR)


def verify_selector(n: int) -> bool:
    """Indexed check through the point-to-box table of the partition."""
    require_odd(n)
    family = boxes(n)
    count, owner = point_owners(n, family)
    if not (count == 1).all():
        return False
    vertices = lucas_vertex_masks(n).astype(np.int64)
    hits = np.bincount(owner[vertices], minlength=len(family))
    chosen = np.full(len(family), -1, dtype=np.int64)
    chosen[owner[vertices]] = vertices
    for idx, b in enumerate(family):
        if b.is_all_ones:
            if hits[idx] != 0:
                return False
        elif hits[idx] != 1 or chosen[idx] != b.ones:
            # the canonical vertex of b has bitmask b.ones
            return False
    return True


def verify_selector_quadratic(n: int) -> bool:
    """Reference check testing every vertex against every box."""
    require_odd(n)
    family = [b for b in boxes(n) if not b.is_all_ones]
    vertices = lucas_vertex_masks(n).tolist()
    for v in vertices:
        if sum(v in b for b in family) != 1:
            return False
    for b in family:
        inside = [v for v in vertices if v in b]
        if len(inside) != 1:
            return False
        if inside[0] != sum(e << j for j, e in enumerate(canonical_vertex(b))):
            return False
    return True
