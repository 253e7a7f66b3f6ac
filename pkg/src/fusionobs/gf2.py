"""Dense linear algebra over GF(2) with rows packed into Python ints.

Bit ``j`` of a row is the entry in column ``j``.  Elimination always pivots
on the lowest-numbered nonzero column, which keeps results reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


def _low_bit(v: int) -> int:
    return (v & -v).bit_length() - 1


@dataclass(frozen=True)
class BitMatrix:
    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self):
        rows = tuple(self.rows)
        limit = 1 << self.ncols
        if any(r < 0 or r >= limit for r in rows):
            raise ValueError("row has bits beyond ncols")
        object.__setattr__(self, "rows", rows)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @classmethod
    def from_lists(cls, data: Sequence[Sequence[int]]) -> "BitMatrix":
        ncols = len(data[0]) if data else 0
        rows = []
        for row in data:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            rows.append(sum(1 << j for j, b in enumerate(row) if b & 1))
        return cls(tuple(rows), ncols)

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def transpose(self) -> "BitMatrix":
        cols = [0] * self.ncols
        for i, row in enumerate(self.rows):
            while row:
                j = _low_bit(row)
                cols[j] |= 1 << i
                row &= row - 1
        return BitMatrix(tuple(cols), self.nrows)

    def mul_vector(self, x: int) -> int:
        """``A x`` with ``x`` packed by column index; the result is packed by row index."""
        out = 0
        for i, row in enumerate(self.rows):
            if bin(row & x).count("1") & 1:
                out |= 1 << i
        return out

    def echelon(self) -> "Echelon":
        ech = Echelon()
        for i, row in enumerate(self.rows):
            ech.add(row, 1 << i)
        return ech

    def rank(self) -> int:
        return self.echelon().rank

    def solve(self, b: int) -> int | None:
        """Some ``x`` with ``A x = b`` (free variables set to 0), or None."""
        return self.transpose().echelon().express(b)

    def nullspace(self) -> list[int]:
        """Basis of ``{x : A x = 0}``, each vector packed by column index."""
        return self.transpose().echelon().relations


class Echelon:
    """Incremental row echelon form that remembers how each pivot row was built.

    ``add(v, tag)`` inserts ``v`` labelled by the bitmask ``tag``; whenever a
    vector reduces to zero its accumulated tag is a linear relation.
    """

    def __init__(self):
        self.pivots: dict[int, tuple[int, int]] = {}
        self.relations: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce(self, v: int, tag: int) -> tuple[int, int]:
        # pivot rows have distinct lowest bits, so the lowest bit of v only moves up
        pivots = self.pivots
        while v:
            hit = pivots.get(_low_bit(v))
            if hit is None:
                break
            v ^= hit[0]
            tag ^= hit[1]
        return v, tag

    def add(self, v: int, tag: int = 0) -> bool:
        v, tag = self._reduce(v, tag)
        if v == 0:
            self.relations.append(tag)
            return False
        self.pivots[_low_bit(v)] = (v, tag)
        return True

    def express(self, v: int) -> int | None:
        """Tag combination spanning ``v`` or None if ``v`` is outside the span."""
        v, tag = self._reduce(v, 0)
        return None if v else tag

    def contains(self, v: int) -> bool:
        return self.express(v) is not None


def rank_of(vectors: Iterable[int]) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.rank
