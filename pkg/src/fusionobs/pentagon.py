"""Exact checks of the one-object pentagon equation ``P12 P13 P23 = P23 P12``.

Operators on ``H^{(x)k}`` (``H`` of dimension ``n``) act on basis vectors
indexed by ``k``-tuples in lexicographic order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class ExactMatrix:
    """Square matrix over the rationals, stored sparsely as ``{(row, col): value}``."""

    dim: int
    entries: tuple[tuple[tuple[int, int], Fraction], ...]

    @classmethod
    def from_dict(cls, dim: int, entries: dict) -> "ExactMatrix":
        clean = {}
        for (i, j), v in entries.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise DimensionError(f"entry ({i}, {j}) outside a {dim}x{dim} matrix")
            v = Fraction(v)
            if v:
                clean[(i, j)] = v
        return cls(dim, tuple(sorted(clean.items())))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        d = len(rows)
        if any(len(r) != d for r in rows):
            raise DimensionError("matrix must be square")
        return cls.from_dict(d, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r)})

    @classmethod
    def identity(cls, dim: int) -> "ExactMatrix":
        return cls.from_dict(dim, {(i, i): 1 for i in range(dim)})

    @classmethod
    def permutation(cls, image: Sequence[int]) -> "ExactMatrix":
        """Matrix sending basis vector ``j`` to basis vector ``image[j]``."""
        return cls.from_dict(len(image), {(image[j], j): 1 for j in range(len(image))})

    def as_dict(self) -> dict:
        return dict(self.entries)

    def to_rows(self) -> list[list[Fraction]]:
        rows = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for (i, j), v in self.entries:
            rows[i][j] = v
        return rows

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.dim != other.dim:
            raise DimensionError("dimension mismatch")
        by_row: dict[int, list] = {}
        for (k, j), v in other.entries:
            by_row.setdefault(k, []).append((j, v))
        out: dict = {}
        for (i, k), a in self.entries:
            for j, b in by_row.get(k, ()):
                out[(i, j)] = out.get((i, j), 0) + a * b
        return ExactMatrix.from_dict(self.dim, out)

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        d = other.dim
        out = {}
        for (i, j), a in self.entries:
            for (k, l), b in other.entries:
                out[(i * d + k, j * d + l)] = a * b
        return ExactMatrix.from_dict(self.dim * d, out)

    def rank(self) -> int:
        return matrix_rank(self.to_rows())

    def is_invertible(self) -> bool:
        return self.rank() == self.dim

    def to_json(self) -> list[list[str]]:
        return [[_fmt(v) for v in row] for row in self.to_rows()]

    @classmethod
    def from_json(cls, data) -> "ExactMatrix":
        if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
            raise DimensionError("matrix JSON must be a non-empty array of arrays")
        try:
            return cls.from_rows([[Fraction(str(v)) for v in row] for row in data])
        except (ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, DimensionError):
                raise
            raise DimensionError(f"bad matrix entry: {exc}") from None


def _fmt(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def matrix_rank(rows: Sequence[Sequence]) -> int:
    """Rank over the rationals by fraction-exact elimination."""
    work = [[Fraction(v) for v in r] for r in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(work)) if work[i][col]), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        p = work[rank][col]
        for i in range(rank + 1, len(work)):
            f = work[i][col]
            if f:
                factor = f / p
                work[i] = [a - factor * b for a, b in zip(work[i], work[rank])]
        rank += 1
    return rank


def _side(dim_sq: int) -> int:
    n = isqrt(dim_sq)
    if n * n != dim_sq or n < 1:
        raise DimensionError(f"dimension {dim_sq} is not a perfect square")
    return n


def swap_operator(n: int) -> ExactMatrix:
    """The flip ``u (x) v -> v (x) u`` on ``H (x) H``."""
    return ExactMatrix.permutation([j * n + i for i in range(n) for j in range(n)])


def _swap23(n: int) -> ExactMatrix:
    image = []
    for a, b, c in itertools.product(range(n), repeat=3):
        image.append((a * n + c) * n + b)
    return ExactMatrix.permutation(image)


def pentagon_operators(phi: ExactMatrix) -> tuple[ExactMatrix, ExactMatrix, ExactMatrix]:
    """``(P12, P13, P23)`` on ``H^{(x)3}``."""
    n = _side(phi.dim)
    ident = ExactMatrix.identity(n)
    p12 = phi.kron(ident)
    p23 = ident.kron(phi)
    s = _swap23(n)
    p13 = s @ p12 @ s
    return p12, p13, p23


def check_pentagon(phi: ExactMatrix, n: int | None = None) -> bool:
    """Exact test of ``P12 P13 P23 == P23 P12``; ``phi`` must be invertible."""
    side = _side(phi.dim)
    if n is not None and n != side:
        raise DimensionError(f"operator of dimension {phi.dim} does not act on H (x) H with dim H = {n}")
    if not phi.is_invertible():
        raise ValueError("operator is singular")
    p12, p13, p23 = pentagon_operators(phi)
    return p12 @ p13 @ p23 == p23 @ p12


# -- groups ------------------------------------------------------------------


@dataclass(frozen=True)
class GroupTable:
    table: tuple[tuple[int, ...], ...]
    name: str = ""

    def __post_init__(self):
        table = tuple(tuple(r) for r in self.table)
        object.__setattr__(self, "table", table)
        problems = group_problems(table)
        if problems:
            raise ValueError("; ".join(problems))

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def identity(self) -> int:
        return next(e for e in range(self.order) if all(self.table[e][g] == g for g in range(self.order)))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def to_json(self) -> dict:
        return {"order": self.order, "table": [list(r) for r in self.table]}

    @classmethod
    def from_json(cls, data) -> "GroupTable":
        if not isinstance(data, dict) or "table" not in data:
            raise DimensionError('group JSON needs "table"')
        table = data["table"]
        if "order" in data and data["order"] != len(table):
            raise DimensionError("order does not match the table size")
        return cls(tuple(tuple(r) for r in table))


def group_problems(table: Sequence[Sequence[int]]) -> list[str]:
    g = len(table)
    if g == 0 or any(len(r) != g for r in table):
        return ["table must be square and non-empty"]
    if any(not isinstance(v, int) or not 0 <= v < g for r in table for v in r):
        return ["entries must be element indices"]
    out = []
    for a, b, c in itertools.product(range(g), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            out.append(f"not associative at ({a}, {b}, {c})")
            break
    ids = [e for e in range(g) if all(table[e][x] == x == table[x][e] for x in range(g))]
    if not ids:
        out.append("no identity")
    else:
        e = ids[0]
        for a in range(g):
            if not any(table[a][b] == e for b in range(g)):
                out.append(f"element {a} has no inverse")
                break
    return out


def _product_group(t1, t2):
    n2 = len(t2)
    size = len(t1) * n2
    return tuple(
        tuple(t1[i // n2][j // n2] * n2 + t2[i % n2][j % n2] for j in range(size)) for i in range(size)
    )


def _perm_group(gens: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Multiplication table of the permutation group generated by ``gens``."""
    n = len(gens[0])
    ident = tuple(range(n))
    elems = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(p[g[i]] for i in range(n))
                if q not in seen:
                    seen.add(q)
                    elems.append(q)
                    nxt.append(q)
        frontier = nxt
    elems.sort()
    pos = {p: i for i, p in enumerate(elems)}
    return tuple(tuple(pos[tuple(a[b[i]] for i in range(n))] for b in elems) for a in elems)


def _cyclic(n: int):
    return tuple(tuple((a + b) % n for b in range(n)) for a in range(n))


def _quaternion():
    # elements +-1, +-i, +-j, +-k as (sign, unit) with unit in 1,i,j,k
    units = {(0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
             (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
             (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
             (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0)}
    elems = [(s, u) for s in (1, -1) for u in range(4)]
    pos = {e: i for i, e in enumerate(elems)}

    def mul(a, b):
        sign, u = units[(a[1], b[1])]
        return pos[(a[0] * b[0] * sign, u)]

    return tuple(tuple(mul(a, b) for b in elems) for a in elems)


def small_groups() -> dict[str, GroupTable]:
    """One table for each isomorphism type of group of order at most 8."""
    c = _cyclic
    tables = {
        "Z1": c(1), "Z2": c(2), "Z3": c(3), "Z4": c(4), "Z2xZ2": _product_group(c(2), c(2)),
        "Z5": c(5), "Z6": c(6), "S3": _perm_group([(1, 0, 2), (1, 2, 0)]), "Z7": c(7),
        "Z8": c(8), "Z2xZ4": _product_group(c(2), c(4)),
        "Z2xZ2xZ2": _product_group(c(2), _product_group(c(2), c(2))),
        "D4": _perm_group([(1, 2, 3, 0), (0, 3, 2, 1)]), "Q8": _quaternion(),
    }
    return {name: GroupTable(t, name) for name, t in tables.items()}


def group_unitary(group: GroupTable) -> ExactMatrix:
    """``(s, t) -> (s, s t)`` on the square of the group algebra."""
    g = group.order
    return ExactMatrix.permutation([s * g + group.mul(s, t) for s in range(g) for t in range(g)])


# -- the x*x = n e case --------------------------------------------------------


def realign(op: ExactMatrix, n: int) -> list[list[Fraction]]:
    """Regroup ``M[(i,j),(k,l)]`` as ``R[(i,k),(j,l)]`` for an operator on ``H (x) H``.

    ``A (x) B`` becomes the rank-one matrix ``vec(A) vec(B)^T``.
    """
    if op.dim != n * n:
        raise DimensionError(f"operator of dimension {op.dim} is not on a square of dimension {n}")
    out = [[Fraction(0)] * (n * n) for _ in range(n * n)]
    for (row, col), v in op.entries:
        i, j = divmod(row, n)
        k, l = divmod(col, n)
        out[i * n + k][j * n + l] = v
    return out


def operator_schmidt_rank(op: ExactMatrix, n: int) -> int:
    return matrix_rank(realign(op, n))


def ne_case_solvable(n: int) -> bool:
    """Whether some invertible ``phi`` on ``H`` of dimension ``n`` has ``phi^2 (x) I`` equal to the flip.

    That requires the flip to factor as ``A (x) I``, i.e. to have
    operator-Schmidt rank one.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    return operator_schmidt_rank(swap_operator(n), n) == 1
