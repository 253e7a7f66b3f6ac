"""Finite permutations and the parity rules for re-sorting lexicographic orders.

Signs are additive: 0 stands for +1 and 1 for -1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Mapping, Sequence


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``0..n-1``; ``image[i]`` is where ``i`` goes."""

    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(self.image)
        if sorted(image) != list(range(len(image))):
            raise ValueError(f"{image} is not a permutation")
        object.__setattr__(self, "image", image)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    def __len__(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """``(p * q)(i) = p(q(i))``."""
        if len(self) != len(other):
            raise ValueError("size mismatch")
        return Permutation(tuple(self.image[j] for j in other.image))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.image)
        for i, j in enumerate(self.image):
            inv[j] = i
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * len(self.image)
        out = []
        for start in range(len(self.image)):
            if seen[start]:
                continue
            cyc = []
            i = start
            while not seen[i]:
                seen[i] = True
                cyc.append(i)
                i = self.image[i]
            out.append(tuple(cyc))
        return out

    def parity(self) -> int:
        """Parity from the cycle type: ``n - #cycles`` mod 2."""
        return (len(self.image) - len(self.cycles())) % 2


def inversion_count(seq: Sequence[int]) -> int:
    n = len(seq)
    return sum(1 for a in range(n) for b in range(a + 1, n) if seq[a] > seq[b])


def sort_sign_oracle(perm: Permutation | Sequence[int]) -> int:
    """Parity of a permutation by brute-force inversion counting."""
    image = perm.image if isinstance(perm, Permutation) else tuple(perm)
    return inversion_count(image) % 2


def resort_permutation(items: Sequence, key_from, key_to) -> Permutation:
    """Permutation taking the position of each item under ``key_from`` to its position under ``key_to``."""
    src = sorted(range(len(items)), key=lambda i: key_from(items[i]))
    dst = sorted(range(len(items)), key=lambda i: key_to(items[i]))
    rank_dst = {item: pos for pos, item in enumerate(dst)}
    return Permutation(tuple(rank_dst[i] for i in src))


def lex_swap_permutation(size_x: int, size_y: int) -> Permutation:
    """Order-preserving re-sort from ``X x Y`` (lex) to ``Y x X`` (lex) as a permutation."""
    pairs = list(itertools.product(range(size_x), range(size_y)))
    return resort_permutation(pairs, lambda p: p, lambda p: (p[1], p[0]))


def lex_swap_sign(size_x: int, size_y: int) -> int:
    if size_x < 0 or size_y < 0:
        raise ValueError("sizes must be non-negative")
    return comb(size_x, 2) * comb(size_y, 2) % 2


def block_reindex_permutation(sizes: Mapping[tuple[int, int], int]) -> Permutation:
    """Re-sort of the disjoint union of blocks from ``(a, b)``-major to ``(b, a)``-major order."""
    items = [(a, b, k) for (a, b), size in sizes.items() for k in range(size)]
    return resort_permutation(items, lambda t: (t[0], t[1], t[2]), lambda t: (t[1], t[0], t[2]))


def block_reindex_sign(sizes: Mapping[tuple[int, int], int]) -> int:
    """Parity of the ``(a, b) -> (b, a)`` block re-sort, from block sizes only."""
    keys = [k for k, v in sizes.items() if v]
    total = 0
    for (a1, b1), (a2, b2) in itertools.product(keys, repeat=2):
        if a1 > a2 and b1 < b2:
            total += sizes[(a1, b1)] * sizes[(a2, b2)]
    return total % 2
