"""Hochschild cochains of an enveloping ring with coefficients in A(S) mod 2.

A degree-``n`` cochain assigns to each ``n``-tuple of basis elements a vector
of ``M = A(S)/2A(S)``, stored as a bitmask over the elements (bit ``s`` is the
coefficient of ``[s]``).  Tuples are listed in lexicographic order.  As a
vector of ``C^n`` the coordinate of ``(tuple, s)`` is ``tuple_index * rank + s``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Callable, Sequence

from .fusion import BoundsError, FusionRing
from .gf2 import BitMatrix, Echelon

# largest cochain space the generic solver will build: rank 3, degree 6
MAX_COCHAIN_DIM = 3**7
MAX_DEGREE = 6

TRIVIAL = "trivial"
NONTRIVIAL = "nontrivial"


class NotACocycleError(ValueError):
    pass


def _space_dim(ring: FusionRing, degree: int) -> int:
    return ring.rank ** (degree + 1)


def check_bounds(ring: FusionRing, degree: int) -> None:
    """Refuse cochain spaces beyond the documented solver limit."""
    if degree < 0 or degree > MAX_DEGREE or _space_dim(ring, degree) > MAX_COCHAIN_DIM:
        raise BoundsError(
            f"C^{degree} has dimension {ring.rank}^{degree + 1}; limit is {MAX_COCHAIN_DIM}"
            f" (rank <= 3 up to degree 6)"
        )


@lru_cache(maxsize=64)
def _mod2_products(ring: FusionRing) -> tuple[tuple[int, ...], ...]:
    """``prod[a][b]`` is the bitmask of ``[a][b]`` reduced mod 2."""
    r = ring.rank
    return tuple(
        tuple(sum(1 << s for s in range(r) if ring.table[a][b][s] & 1) for b in range(r))
        for a in range(r)
    )


def _act(prod_row: Sequence[int], vec: int) -> int:
    out = 0
    s = 0
    while vec:
        if vec & 1:
            out ^= prod_row[s]
        vec >>= 1
        s += 1
    return out


def left_mult(ring: FusionRing, x: int, vec: int) -> int:
    """``[x] . v`` in ``M``."""
    return _act(_mod2_products(ring)[x], vec)


def right_mult(ring: FusionRing, vec: int, x: int) -> int:
    """``v . [x]`` in ``M``."""
    prod = _mod2_products(ring)
    return _act([prod[s][x] for s in range(ring.rank)], vec)


@dataclass(frozen=True)
class Cochain:
    ring: FusionRing
    degree: int
    values: tuple[int, ...]

    def __post_init__(self):
        values = tuple(self.values)
        if self.degree < 0:
            raise ValueError("degree must be non-negative")
        if len(values) != self.ring.rank**self.degree:
            raise ValueError(f"a degree-{self.degree} cochain needs {self.ring.rank ** self.degree} values")
        full = (1 << self.ring.rank) - 1
        if any(v & ~full for v in values):
            raise ValueError("value has bits outside the element set")
        object.__setattr__(self, "values", values)

    @classmethod
    def zero(cls, ring: FusionRing, degree: int) -> "Cochain":
        return cls(ring, degree, (0,) * ring.rank**degree)

    @classmethod
    def from_function(cls, ring: FusionRing, degree: int, fn: Callable[[tuple[int, ...]], int]) -> "Cochain":
        return cls(ring, degree, tuple(fn(t) for t in itertools.product(range(ring.rank), repeat=degree)))

    @classmethod
    def random(cls, ring: FusionRing, degree: int, rng: random.Random) -> "Cochain":
        hi = 1 << ring.rank
        return cls(ring, degree, tuple(rng.randrange(hi) for _ in range(ring.rank**degree)))

    @classmethod
    def from_vector(cls, ring: FusionRing, degree: int, vec: int) -> "Cochain":
        r = ring.rank
        mask = (1 << r) - 1
        return cls(ring, degree, tuple((vec >> (i * r)) & mask for i in range(r**degree)))

    def tuples(self):
        return itertools.product(range(self.ring.rank), repeat=self.degree)

    def index(self, args: Sequence[int]) -> int:
        i = 0
        for a in args:
            i = i * self.ring.rank + a
        return i

    def __call__(self, *args: int) -> int:
        if len(args) != self.degree:
            raise ValueError(f"expected {self.degree} arguments")
        return self.values[self.index(args)]

    def __add__(self, other: "Cochain") -> "Cochain":
        if other.ring != self.ring or other.degree != self.degree:
            raise ValueError("cochains live in different groups")
        return Cochain(self.ring, self.degree, tuple(a ^ b for a, b in zip(self.values, other.values)))

    def is_zero(self) -> bool:
        return not any(self.values)

    def to_vector(self) -> int:
        r = self.ring.rank
        v = 0
        for i, val in enumerate(self.values):
            v |= val << (i * r)
        return v

    def to_dict(self) -> dict:
        names = self.ring.names
        out = {}
        for t, val in zip(self.tuples(), self.values):
            if val:
                out[",".join(names[a] for a in t)] = {names[s]: (val >> s) & 1 for s in range(self.ring.rank)}
        return {"degree": self.degree, "values": out}

    @classmethod
    def from_dict(cls, ring: FusionRing, data: dict) -> "Cochain":
        degree = data["degree"]
        values = [0] * ring.rank**degree
        for key, comps in data["values"].items():
            args = [ring.index(n) for n in key.split(",")] if degree else []
            if len(args) != degree:
                raise ValueError(f"bad cochain key {key!r}")
            i = 0
            for a in args:
                i = i * ring.rank + a
            values[i] = sum((int(b) & 1) << ring.index(n) for n, b in comps.items())
        return cls(ring, degree, tuple(values))


def coboundary(f: Cochain) -> Cochain:
    """``(df)(x1..x_{n+1}) = x1 f(x2..) + sum_i f(.., x_i x_{i+1}, ..) + f(..x_n) x_{n+1}`` mod 2."""
    ring = f.ring
    r = ring.rank
    n = f.degree
    prod = _mod2_products(ring)
    right_rows = [[prod[s][x] for s in range(r)] for x in range(r)]
    vals = f.values
    tail = r**n  # number of n-tuples
    out = []
    for u in itertools.product(range(r), repeat=n + 1):
        idx_rest = 0
        for a in u[1:]:
            idx_rest = idx_rest * r + a
        idx_head = 0
        for a in u[:-1]:
            idx_head = idx_head * r + a
        v = _act(prod[u[0]], vals[idx_rest]) ^ _act(right_rows[u[-1]], vals[idx_head])
        for i in range(n):
            merged = prod[u[i]][u[i + 1]]
            pre = 0
            for a in u[:i]:
                pre = pre * r + a
            post_len = n - 1 - i
            post = 0
            for a in u[i + 2:]:
                post = post * r + a
            s = 0
            while merged:
                if merged & 1:
                    v ^= vals[(pre * r + s) * r**post_len + post]
                merged >>= 1
                s += 1
        out.append(v)
    assert len(out) == tail * r
    return Cochain(ring, n + 1, tuple(out))


def coboundary_rows(ring: FusionRing, degree: int) -> BitMatrix:
    """Transpose of the matrix of ``d: C^degree -> C^(degree+1)``.

    Row ``k`` is the image of the ``k``-th basis cochain as a vector of
    ``C^(degree+1)``; building rows directly avoids a transpose.
    """
    check_bounds(ring, degree + 1)
    r = ring.rank
    n = degree
    prod = _mod2_products(ring)
    preimages = [[(a, b) for a in range(r) for b in range(r) if (prod[a][b] >> s) & 1] for s in range(r)]
    rows = []
    power = [r**k for k in range(n + 2)]
    for t in itertools.product(range(r), repeat=n):
        t_idx = 0
        for a in t:
            t_idx = t_idx * r + a
        for c in range(r):
            img = 0
            for x in range(r):
                # x . f(t) at (x, t)
                pos = x * power[n] + t_idx
                img ^= prod[x][c] << (pos * r)
                # f(t) . x at (t, x)
                pos = t_idx * r + x
                img ^= prod[c][x] << (pos * r)
            for i in range(n):
                pre = 0
                for a in t[:i]:
                    pre = pre * r + a
                post = 0
                for a in t[i + 1:]:
                    post = post * r + a
                post_len = n - 1 - i
                for a, b in preimages[t[i]]:
                    pos = ((pre * r + a) * r + b) * power[post_len] + post
                    img ^= 1 << (pos * r + c)
            rows.append(img)
    return BitMatrix(tuple(rows), r ** (n + 2))


def coboundary_rank(ring: FusionRing, degree: int) -> int:
    if degree < 0:
        return 0
    return coboundary_rows(ring, degree).rank()


def cohomology_dim(ring: FusionRing, degree: int) -> int:
    """``dim ker d_n - dim im d_(n-1)`` over GF(2)."""
    check_bounds(ring, degree + 1)
    dim = _space_dim(ring, degree)
    return dim - coboundary_rank(ring, degree) - coboundary_rank(ring, degree - 1)


def is_coboundary(c: Cochain) -> tuple[bool, Cochain | None]:
    """Decide whether ``c`` is ``d g``; the witness ``g`` satisfies ``d g = c`` exactly.

    Raises :class:`NotACocycleError` if ``d c != 0``.
    """
    check_bounds(c.ring, c.degree)
    if not coboundary(c).is_zero():
        raise NotACocycleError("input is not a cocycle")
    if c.degree == 0:
        return (c.is_zero(), None)
    rows = coboundary_rows(c.ring, c.degree - 1)
    ech = Echelon()
    for k, row in enumerate(rows.rows):
        ech.add(row, 1 << k)
    combo = ech.express(c.to_vector())
    if combo is None:
        return False, None
    witness = Cochain.from_vector(c.ring, c.degree - 1, combo)
    return True, witness


# -- the rank-2 family {e, x}, x*x = m x + n e ------------------------------


@dataclass(frozen=True)
class Rank2Cohomology:
    degree: int
    dim: int
    basis: tuple[tuple[int, int], ...]  # representatives as (coeff of e, coeff of x) mod 2


def _vec(e: int, x: int) -> int:
    return (e & 1) | ((x & 1) << 1)


def _unvec(v: int) -> tuple[int, int]:
    return v & 1, (v >> 1) & 1


def _kernel_2x2(cols: tuple[int, int]) -> list[int]:
    return BitMatrix.from_lists([[(cols[j] >> i) & 1 for j in range(2)] for i in range(2)]).nullspace()


def _quotient(kernel: list[int], image: list[int]) -> list[int]:
    ech = Echelon()
    for v in image:
        ech.add(v)
    reps = []
    for v in kernel:
        if ech.add(v):
            reps.append(v)
    return reps


def rank2_cohomology(m: int, n: int, degree: int) -> Rank2Cohomology:
    """``H^degree(A, A/2A)`` for ``A = Z[x]/(x^2 - m x - n)`` from the 2-periodic resolution.

    Even degrees: ``{y : xy = yx} / {xz + zx - mz}``; odd degrees:
    ``{y : xy + yx = my} / {xz - zx}``, all computed in ``A/2A`` with basis ``(e, x)``.
    """
    if degree < 1:
        raise ValueError("degree must be at least 1")
    # multiplication by x on M, as images of the basis (e, x)
    lx = (_vec(0, 1), _vec(n, m))
    rx = lx  # M is commutative
    mm = m & 1
    ident = (_vec(1, 0), _vec(0, 1))
    commutator = tuple(lx[j] ^ rx[j] for j in range(2))
    twisted = tuple(lx[j] ^ rx[j] ^ (ident[j] if mm else 0) for j in range(2))

    def image(cols):
        return [c for c in cols if c]

    if degree % 2 == 0:
        reps = _quotient(_kernel_2x2(commutator), image(twisted))
    else:
        reps = _quotient(_kernel_2x2(twisted), image(commutator))
    return Rank2Cohomology(degree, len(reps), tuple(_unvec(v) for v in reps))


def classify_rank2(m: int, n: int) -> str:
    """Congruence rule: nontrivial iff m = 0 (2) and n = 2,3 (4), or m = 2 (4) and n = 1 (4)."""
    if m < 0 or n < 0:
        raise ValueError("m and n must be non-negative")
    if (m % 2 == 0 and n % 4 in (2, 3)) or (m % 4 == 2 and n % 4 == 1):
        return NONTRIVIAL
    return TRIVIAL


def rank2_alpha_at_xxxx(m: int, n: int) -> tuple[int, int]:
    """Components ``(e, x)`` of the obstruction cocycle at ``(x, x, x, x)``."""
    return (comb(n, 2) + n * comb(m, 2)) % 2, (m * comb(m, 2) + n * m) % 2


def classify_rank2_evaluated(m: int, n: int) -> str:
    """Class read off from the cocycle value at ``(x,x,x,x)`` in ``A/(2,m)A``.

    ``A/(2,m)A`` vanishes for odd ``m`` and is ``A/2A`` for even ``m``.
    """
    if m < 0 or n < 0:
        raise ValueError("m and n must be non-negative")
    if m % 2:
        return TRIVIAL
    return NONTRIVIAL if any(rank2_alpha_at_xxxx(m, n)) else TRIVIAL
