"""Fusion rings, their morphisms and enveloping-ring arithmetic.

A fusion ring of rank ``r`` is stored as an ``r x r x r`` table of
non-negative integers where ``table[i][j][k]`` is the multiplicity of the
basis element ``k`` in the product ``i * j``.  Elements are indexed
``0..r-1`` and that index order is the linear order used everywhere else
in the package.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator, Sequence

INT64_MAX = 2**63 - 1

Table = tuple[tuple[tuple[int, ...], ...], ...]


class RingFormatError(ValueError):
    """Raised when a ring description is structurally malformed."""


class InvalidRingError(ValueError):
    """Raised when a well-formed table violates the fusion ring axioms."""

    def __init__(self, report: "ValidationReport"):
        super().__init__(str(report))
        self.report = report


class BoundsError(ValueError):
    """Raised when a request exceeds a documented size limit."""


def checked(value: int) -> int:
    """Enforce the signed 64-bit range on an intermediate result."""
    if value > INT64_MAX or value < -INT64_MAX - 1:
        raise OverflowError(f"integer {value} exceeds the signed 64-bit range")
    return value


@dataclass(frozen=True)
class Violation:
    kind: str  # "negative", "associativity", "identity" or "morphism"
    where: tuple[int, ...]
    lhs: int | None = None
    rhs: int | None = None

    def __str__(self) -> str:
        if self.kind == "negative":
            return f"negative entry at {self.where}: {self.lhs}"
        return f"{self.kind} violated at {self.where}: {self.lhs} != {self.rhs}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "OK"
        return "\n".join(str(v) for v in self.violations)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [
                {"kind": v.kind, "where": list(v.where), "lhs": v.lhs, "rhs": v.rhs}
                for v in self.violations
            ],
        }


def _freeze_table(table: Sequence) -> Table:
    rank = len(table)
    if rank == 0:
        raise RingFormatError("rank must be positive")
    try:
        frozen = tuple(tuple(tuple(int(v) for v in row) for row in plane) for plane in table)
    except TypeError as exc:
        raise RingFormatError("table must be a rank x rank x rank array of integers") from exc
    for plane in frozen:
        if len(plane) != rank or any(len(row) != rank for row in plane):
            raise RingFormatError(f"table is not {rank}x{rank}x{rank}")
    return frozen


def validate_fusion_ring(table: Sequence, identity: int | None = None) -> ValidationReport:
    """Check non-negativity, associativity and (if declared) the identity axiom.

    ``table`` is any nested sequence; a structurally broken table or rank 0
    raises :class:`RingFormatError` instead of producing a report.
    """
    t = _freeze_table(table)
    r = len(t)
    violations: list[Violation] = []
    for i, j, k in itertools.product(range(r), repeat=3):
        if t[i][j][k] < 0:
            violations.append(Violation("negative", (i, j, k), t[i][j][k]))
    for i, j, l, k in itertools.product(range(r), repeat=4):
        lhs = sum(t[i][s][k] * t[j][l][s] for s in range(r))
        rhs = sum(t[i][j][s] * t[s][l][k] for s in range(r))
        if lhs != rhs:
            violations.append(Violation("associativity", (i, j, l, k), lhs, rhs))
    if identity is not None:
        if not 0 <= identity < r:
            raise RingFormatError(f"identity index {identity} out of range")
        for s, u in itertools.product(range(r), repeat=2):
            want = int(s == u)
            if t[u][identity][s] != want:
                violations.append(Violation("identity", (u, identity, s), t[u][identity][s], want))
            if t[identity][u][s] != want:
                violations.append(Violation("identity", (identity, u, s), t[identity][u][s], want))
    return ValidationReport(tuple(violations))


def default_names(rank: int, identity: int | None) -> tuple[str, ...]:
    if identity is not None and rank <= 5:
        others = iter("xyzw")
        return tuple("e" if i == identity else next(others) for i in range(rank))
    if rank <= 26:
        return tuple("abcdefghijklmnopqrstuvwxyz"[:rank])
    return tuple(f"s{i}" for i in range(rank))


@dataclass(frozen=True)
class FusionRing:
    """A finite fusion ring; ``table[i][j][k]`` is the multiplicity of ``k`` in ``i*j``.

    Construction checks shape and non-negativity only. Use
    :func:`validate_fusion_ring` (or :func:`make_ring`) for the full axioms.
    """

    table: Table
    names: tuple[str, ...] = ()
    identity: int | None = None
    # position i of the ring held index original_order[i] in the loaded file
    original_order: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        table = _freeze_table(self.table)
        object.__setattr__(self, "table", table)
        r = len(table)
        if any(v < 0 for plane in table for row in plane for v in row):
            raise InvalidRingError(validate_fusion_ring(table))
        names = tuple(self.names) if self.names else default_names(r, self.identity)
        if len(names) != r or len(set(names)) != r:
            raise RingFormatError("names must be distinct and one per element")
        object.__setattr__(self, "names", names)
        if self.identity is not None and not 0 <= self.identity < r:
            raise RingFormatError(f"identity index {self.identity} out of range")

    @property
    def rank(self) -> int:
        return len(self.table)

    def m(self, out: int, a: int, b: int) -> int:
        """Structural constant: multiplicity of ``out`` in ``a * b``."""
        return self.table[a][b][out]

    def index(self, name: str | int) -> int:
        if isinstance(name, int):
            if not 0 <= name < self.rank:
                raise IndexError(name)
            return name
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown element {name!r}") from None

    def validate(self) -> ValidationReport:
        return validate_fusion_ring(self.table, self.identity)

    def relabel(self, order: Sequence[int]) -> "FusionRing":
        """Return the same ring with element ``order[i]`` moved to index ``i``."""
        order = tuple(order)
        if sorted(order) != list(range(self.rank)):
            raise ValueError("order must be a permutation of the element indices")
        pos = {old: new for new, old in enumerate(order)}
        table = tuple(
            tuple(tuple(self.table[order[i]][order[j]][order[k]] for k in range(self.rank))
                  for j in range(self.rank))
            for i in range(self.rank)
        )
        identity = None if self.identity is None else pos[self.identity]
        return FusionRing(table, tuple(self.names[o] for o in order), identity)

    def basis(self, i: int | str) -> "EnvelopingElement":
        coeffs = [0] * self.rank
        coeffs[self.index(i)] = 1
        return EnvelopingElement(self, tuple(coeffs))

    def element(self, coeffs: Sequence[int]) -> "EnvelopingElement":
        return EnvelopingElement(self, tuple(coeffs))


def make_ring(table: Sequence, names: Sequence[str] = (), identity: int | None = None) -> FusionRing:
    """Build a ring and insist that every axiom holds."""
    report = validate_fusion_ring(table, identity)
    if not report.ok:
        raise InvalidRingError(report)
    return FusionRing(table, tuple(names), identity)


def find_identity(ring: FusionRing) -> int | None:
    r = ring.rank
    t = ring.table
    for e in range(r):
        if all(t[u][e][s] == t[e][u][s] == int(s == u) for s in range(r) for u in range(r)):
            return e
    return None


@dataclass(frozen=True)
class EnvelopingElement:
    """An element of the enveloping ring: integer combination of basis symbols."""

    ring: FusionRing
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.ring.rank:
            raise ValueError("coefficient vector length must equal the ring rank")

    def __add__(self, other: "EnvelopingElement") -> "EnvelopingElement":
        _same_ring(self, other)
        return EnvelopingElement(self.ring, tuple(checked(a + b) for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "EnvelopingElement") -> "EnvelopingElement":
        return multiply(self, other)

    def __rmul__(self, scalar: int) -> "EnvelopingElement":
        return EnvelopingElement(self.ring, tuple(checked(scalar * c) for c in self.coeffs))

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i]

    def __str__(self) -> str:
        terms = [f"{c}[{n}]" if c != 1 else f"[{n}]" for c, n in zip(self.coeffs, self.ring.names) if c]
        return " + ".join(terms) or "0"


def _same_ring(a: EnvelopingElement, b: EnvelopingElement) -> None:
    if a.ring != b.ring:
        raise ValueError("elements belong to different rings")


def multiply(a: EnvelopingElement, b: EnvelopingElement) -> EnvelopingElement:
    _same_ring(a, b)
    r = a.ring.rank
    t = a.ring.table
    out = [0] * r
    for i, ai in enumerate(a.coeffs):
        if not ai:
            continue
        for j, bj in enumerate(b.coeffs):
            if not bj:
                continue
            w = checked(ai * bj)
            for s, mult in enumerate(t[i][j]):
                if mult:
                    out[s] = checked(out[s] + checked(w * mult))
    return EnvelopingElement(a.ring, tuple(out))


def nary_constant(ring: FusionRing, output: int, inputs: Sequence[int]) -> int:
    """Multiplicity of ``output`` in the product of ``inputs`` (left-nested)."""
    if not inputs:
        raise ValueError("need at least one input")
    v = ring.basis(inputs[0])
    for x in inputs[1:]:
        v = multiply(v, ring.basis(x))
    return v.coeffs[output]


@dataclass(frozen=True)
class FusionMorphism:
    """``matrix[t][s]`` is the multiplicity of target element ``t`` in the image of ``s``."""

    source: FusionRing
    target: FusionRing
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        mat = tuple(tuple(int(v) for v in row) for row in self.matrix)
        if len(mat) != self.target.rank or any(len(row) != self.source.rank for row in mat):
            raise ValueError(
                f"morphism matrix must be {self.target.rank}x{self.source.rank}"
            )
        if any(v < 0 for row in mat for v in row):
            raise ValueError("morphism multiplicities must be non-negative")
        object.__setattr__(self, "matrix", mat)

    def apply(self, v: EnvelopingElement) -> EnvelopingElement:
        if v.ring != self.source:
            raise ValueError("element does not belong to the source ring")
        out = [sum(row[s] * v.coeffs[s] for s in range(self.source.rank)) for row in self.matrix]
        return EnvelopingElement(self.target, tuple(out))

    def then(self, other: "FusionMorphism") -> "FusionMorphism":
        """Composite ``other o self`` (matrix product)."""
        if other.source != self.target:
            raise ValueError("morphisms are not composable")
        mat = tuple(
            tuple(sum(other.matrix[u][t] * self.matrix[t][s] for t in range(self.target.rank))
                  for s in range(self.source.rank))
            for u in range(other.target.rank)
        )
        return FusionMorphism(self.source, other.target, mat)


def validate_morphism(f: FusionMorphism) -> ValidationReport:
    S, T, n = f.source, f.target, f.matrix
    rs, rt = S.rank, T.rank
    violations = []
    for s1, s2, t in itertools.product(range(rs), range(rs), range(rt)):
        lhs = sum(S.table[s1][s2][s] * n[t][s] for s in range(rs))
        rhs = sum(T.table[t1][t2][t] * n[t1][s1] * n[t2][s2] for t1 in range(rt) for t2 in range(rt))
        if lhs != rhs:
            violations.append(Violation("morphism", (s1, s2, t), lhs, rhs))
    return ValidationReport(tuple(violations))


# -- enumeration ---------------------------------------------------------

MAX_ENUM_RANK = 4
MAX_ENUM_ENTRY = 4


def _equation_schedule(r: int) -> list[list[tuple[int, int, int, int]]]:
    """Group associativity equations by the last flattened position they read."""
    pos = lambda i, j, k: (i * r + j) * r + k  # noqa: E731
    schedule: list[list[tuple[int, int, int, int]]] = [[] for _ in range(r**3)]
    for i, j, l, k in itertools.product(range(r), repeat=4):
        deps = [pos(i, t, k) for t in range(r)] + [pos(j, l, t) for t in range(r)]
        deps += [pos(i, j, s) for s in range(r)] + [pos(s, l, k) for s in range(r)]
        schedule[max(deps)].append((i, j, l, k))
    return schedule


def _search_tables(rank: int, max_entry: int, require_identity: bool) -> Iterator[tuple[int, ...]]:
    r = rank
    n = r**3
    schedule = _equation_schedule(r)
    fixed: dict[int, int] = {}
    if require_identity:
        for s, u, k in itertools.product(range(r), repeat=3):
            if s == 0:
                fixed[(0 * r + u) * r + k] = int(u == k)
            if u == 0:
                fixed[(s * r + 0) * r + k] = int(s == k)
    flat = [0] * n

    def consistent(p: int) -> bool:
        for i, j, l, k in schedule[p]:
            lhs = 0
            rhs = 0
            for t in range(r):
                lhs += flat[(i * r + t) * r + k] * flat[(j * r + l) * r + t]
                rhs += flat[(i * r + j) * r + t] * flat[(t * r + l) * r + k]
            if lhs != rhs:
                return False
        return True

    def rec(p: int) -> Iterator[tuple[int, ...]]:
        if p == n:
            yield tuple(flat)
            return
        values = (fixed[p],) if p in fixed else range(max_entry + 1)
        for v in values:
            flat[p] = v
            if consistent(p):
                yield from rec(p + 1)
        flat[p] = 0

    yield from rec(0)


def _unflatten(flat: Sequence[int], r: int) -> Table:
    return tuple(
        tuple(tuple(flat[(i * r + j) * r + k] for k in range(r)) for j in range(r))
        for i in range(r)
    )


def enumerate_fusion_rings(rank: int, max_entry: int, require_identity: bool = False) -> Iterator[FusionRing]:
    """Yield every associative table with entries in ``0..max_entry``.

    Rings come out in lexicographic order of the flattened table
    ``table[0][0][0], table[0][0][1], ...``.  With ``require_identity``
    element 0 is the identity and its row and column are not searched.
    No isomorphism reduction is done.
    """
    if not 1 <= rank <= MAX_ENUM_RANK:
        raise BoundsError(f"rank must be in 1..{MAX_ENUM_RANK}, got {rank}")
    if not 0 <= max_entry <= MAX_ENUM_ENTRY:
        raise BoundsError(f"max_entry must be in 0..{MAX_ENUM_ENTRY}, got {max_entry}")
    identity = 0 if require_identity else None
    names = default_names(rank, identity)
    for flat in _search_tables(rank, max_entry, require_identity):
        yield FusionRing(_unflatten(flat, rank), names, identity)


def random_fusion_rings(
    rank: int, max_entry: int, count: int, seed: int = 0, require_identity: bool = True
) -> list[FusionRing]:
    """Draw ``count`` distinct valid rings uniformly from the enumerated pool.

    Returned in enumeration order.  Fewer are returned if the pool is smaller.
    """
    pool = list(enumerate_fusion_rings(rank, max_entry, require_identity))
    rng = random.Random(seed)
    picks = sorted(rng.sample(range(len(pool)), min(count, len(pool))))
    return [pool[i] for i in picks]


# -- named constructions -------------------------------------------------


def rank2_ring(m: int, n: int) -> FusionRing:
    """The ring {e, x} with x*x = m x + n e."""
    if m < 0 or n < 0:
        raise ValueError("m and n must be non-negative")
    table = [[[1, 0], [0, 1]], [[0, 1], [n, m]]]
    return FusionRing(table, ("e", "x"), 0)


def one_element_ring(n: int) -> FusionRing:
    """The ring {x} with x*x = n x."""
    return FusionRing([[[n]]], ("x",))


def group_ring(mult: Sequence[Sequence[int]], names: Sequence[str] = ()) -> FusionRing:
    """Fusion ring of a finite group given by its multiplication table."""
    g = len(mult)
    table = [[[int(mult[a][b] == c) for c in range(g)] for b in range(g)] for a in range(g)]
    ring = make_ring(table, names)
    e = find_identity(ring)
    return FusionRing(ring.table, ring.names, e)


def cyclic_group_ring(n: int) -> FusionRing:
    return group_ring([[(a + b) % n for b in range(n)] for a in range(n)],
                      [f"g{a}" for a in range(n)])


# -- JSON ------------------------------------------------------------------


def ring_to_dict(ring: FusionRing) -> dict:
    table: dict[str, dict[str, int]] = {}
    for i, j in itertools.product(range(ring.rank), repeat=2):
        row = {ring.names[k]: v for k, v in enumerate(ring.table[i][j]) if v}
        if row:
            table[f"{ring.names[i]},{ring.names[j]}"] = row
    return {
        "names": list(ring.names),
        "identity": None if ring.identity is None else ring.names[ring.identity],
        "table": table,
    }


def parse_ring_dict(data) -> tuple[tuple[str, ...], list, int | None]:
    """Decode the ring JSON schema into ``(names, table, identity)`` without validating axioms."""
    if not isinstance(data, dict) or "names" not in data or "table" not in data:
        raise RingFormatError('ring JSON needs "names" and "table"')
    names = data["names"]
    if not isinstance(names, list) or not names or not all(isinstance(n, str) for n in names):
        raise RingFormatError('"names" must be a non-empty list of strings')
    if len(set(names)) != len(names):
        raise RingFormatError("element names must be distinct")
    if any("," in n for n in names):
        raise RingFormatError("element names may not contain commas")
    r = len(names)
    idx = {n: i for i, n in enumerate(names)}
    table = [[[0] * r for _ in range(r)] for _ in range(r)]
    entries = data["table"]
    if not isinstance(entries, dict):
        raise RingFormatError('"table" must be an object')
    for key, row in entries.items():
        parts = key.split(",")
        if len(parts) != 2 or parts[0] not in idx or parts[1] not in idx:
            raise RingFormatError(f"bad table key {key!r}")
        if not isinstance(row, dict):
            raise RingFormatError(f"entry {key!r} must be an object")
        for out, mult in row.items():
            if out not in idx:
                raise RingFormatError(f"unknown element {out!r} in entry {key!r}")
            if isinstance(mult, bool) or not isinstance(mult, int):
                raise RingFormatError(f"multiplicity for {key!r} -> {out!r} must be an integer")
            table[idx[parts[0]]][idx[parts[1]]][idx[out]] = mult
    ident = data.get("identity")
    if ident is not None and ident not in idx:
        raise RingFormatError(f"identity {ident!r} is not an element")
    return tuple(names), table, None if ident is None else idx[ident]


def ring_from_dict(data, normalize_identity: bool = True) -> FusionRing:
    """Load and fully validate a ring; the declared identity is moved to index 0."""
    names, table, identity = parse_ring_dict(data)
    ring = make_ring(table, names, identity)
    if normalize_identity and identity not in (None, 0):
        order = (identity,) + tuple(i for i in range(ring.rank) if i != identity)
        ring = ring.relabel(order)
        object.__setattr__(ring, "original_order", order)
    return ring
