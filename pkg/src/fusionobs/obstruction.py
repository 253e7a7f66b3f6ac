"""The first obstruction cocycle of a fusion ring.

For each output ``x`` and inputs ``x1..x4`` the five binary trees with four
ends give five ordered index sets.  Re-bracketing one vertex at a time with
the order-preserving associator ``Phi`` walks around the pentagon in two
ways; the parity of the loop permutation is the value ``alpha^x``.

Two evaluations are provided.  :func:`pentagon_sign_bruteforce` builds the
permutations explicitly.  :func:`pentagon_sign_closed` adds up the parities
edge by edge from the structural constants alone.  :func:`pentagon_sign_six_term`
is the six-term expression that omits the two terms coming from repeated
root multiplicities on the ``13`` and ``45`` edges; it agrees with the others
only when those multiplicities are at most one (for instance on the rank-2
rings with identity).
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Sequence

from .fusion import FusionRing, ring_to_dict
from .hochschild import Cochain, coboundary
from .permutation import Permutation, block_reindex_sign
from .trees import (
    OrderedIndexSet,
    PlanarTree,
    binary,
    LEAF,
    marked_index_set,
    vertex_order,
)

_CHERRY = binary(LEAF, LEAF)

# the five vertices of the pentagon
PENTAGON_TREES: dict[str, PlanarTree] = {
    "V1": binary(LEAF, binary(LEAF, _CHERRY)),  # x1(x2(x3x4))
    "V2": binary(_CHERRY, _CHERRY),  # (x1x2)(x3x4)
    "V3": binary(LEAF, binary(_CHERRY, LEAF)),  # x1((x2x3)x4)
    "V4": binary(binary(LEAF, _CHERRY), LEAF),  # (x1(x2x3))x4
    "V5": binary(binary(_CHERRY, LEAF), LEAF),  # ((x1x2)x3)x4
}

# edges as (source, target, path of the vertex that is re-bracketed)
PENTAGON_EDGES: dict[str, tuple[str, str, tuple[int, ...]]] = {
    "e12": ("V1", "V2", ()),
    "e25": ("V2", "V5", ()),
    "e13": ("V1", "V3", (1,)),
    "e34": ("V3", "V4", ()),
    "e45": ("V4", "V5", (0,)),
}
TWO_EDGE_SIDE = ("e12", "e25")
THREE_EDGE_SIDE = ("e13", "e34", "e45")


# -- nested elements ---------------------------------------------------------
#
# An element of a marked index set is also written as a nested tuple: a leaf
# is its label (an int), an internal vertex is (label, index, left, right).


def _label(node) -> int:
    return node if isinstance(node, int) else node[0]


@lru_cache(maxsize=None)
def _vertex_order(t: PlanarTree) -> tuple:
    return tuple(vertex_order(t))


def member_to_nested(t: PlanarTree, member, output: int, inputs: Sequence[int]):
    labels, idx = member
    verts = _vertex_order(t)
    vlab = {verts[0]: output}
    vlab.update(zip(verts[1:], labels))
    vidx = dict(zip(verts, idx))
    leaves = iter(inputs)

    def build(node: PlanarTree, path):
        if node.is_leaf:
            return next(leaves)
        left = build(node.children[0], path + (0,))
        right = build(node.children[1], path + (1,))
        return (vlab[path], vidx[path], left, right)

    return build(t, ())


def nested_to_member(nested):
    labels, idx = [], []
    queue = [nested]
    while queue:
        nxt = []
        for node in queue:
            if node is not nested:
                labels.append(node[0])
            idx.append(node[1])
            nxt.extend(c for c in node[2:] if not isinstance(c, int))
        queue = nxt
    return tuple(labels), tuple(idx)


class Associator:
    """Order-preserving bijections ``Phi^x_{y,z,w}`` for one ring, cached.

    The source ``y(zw)`` is listed as ``(u, i, j)`` with ``i`` indexing
    ``m^x_{y,u}`` and ``j`` indexing ``m^u_{z,w}``; the target ``(yz)w`` as
    ``(v, s, t)`` with ``s`` indexing ``m^x_{v,w}`` and ``t`` indexing
    ``m^v_{y,z}``.  Both lists are lexicographic, root index first.
    """

    def __init__(self, ring: FusionRing):
        self.ring = ring
        self._cache: dict[tuple[int, int, int, int], dict] = {}

    def phi(self, x: int, y: int, z: int, w: int) -> dict:
        key = (x, y, z, w)
        hit = self._cache.get(key)
        if hit is None:
            m = self.ring.m
            r = range(self.ring.rank)
            src = [(u, i, j) for u in r for i in range(m(x, y, u)) for j in range(m(u, z, w))]
            tgt = [(v, s, t) for v in r for s in range(m(x, v, w)) for t in range(m(v, y, z))]
            if len(src) != len(tgt):
                raise ValueError(f"ring is not associative at {key}")
            hit = dict(zip(src, tgt))
            self._cache[key] = hit
        return hit

    def rotate(self, node):
        """``y(zw) -> (yz)w`` at the top of ``node``."""
        x, i, a, right = node
        u, j, b, c = right
        v, s, t = self.phi(x, _label(a), _label(b), _label(c))[(u, i, j)]
        return (x, s, (v, t, a, b), c)

    def rotate_at(self, node, path: tuple[int, ...]):
        if not path:
            return self.rotate(node)
        label, idx, left, right = node
        if path[0] == 0:
            return (label, idx, self.rotate_at(left, path[1:]), right)
        return (label, idx, left, self.rotate_at(right, path[1:]))


@dataclass
class PentagonLoop:
    """The five vertex sets and five edge permutations for one entry."""

    vertices: dict[str, OrderedIndexSet]
    edges: dict[str, Permutation]

    def side(self, names: Sequence[str]) -> Permutation:
        n = len(self.vertices["V1"])
        acc = Permutation.identity(n)
        for name in names:
            acc = self.edges[name] * acc
        return acc

    def loop(self) -> Permutation:
        """Two-edge side followed by the inverse of the three-edge side, on ``V1``."""
        return self.side(THREE_EDGE_SIDE).inverse() * self.side(TWO_EDGE_SIDE)

    def parity(self) -> int:
        return self.loop().parity()


def pentagon_loop(ring: FusionRing, x: int, x1: int, x2: int, x3: int, x4: int,
                  assoc: Associator | None = None) -> PentagonLoop:
    assoc = assoc or Associator(ring)
    inputs = (x1, x2, x3, x4)
    sets = {name: marked_index_set(ring, t, inputs, x) for name, t in PENTAGON_TREES.items()}
    edges = {}
    for name, (src, dst, path) in PENTAGON_EDGES.items():
        tree = PENTAGON_TREES[src]
        target = sets[dst]
        image = []
        for member in sets[src]:
            nested = member_to_nested(tree, member, x, inputs)
            image.append(target.position(nested_to_member(assoc.rotate_at(nested, path))))
        edges[name] = Permutation(tuple(image))
    return PentagonLoop(sets, edges)


def pentagon_sign_bruteforce(ring: FusionRing, x: int, x1: int, x2: int, x3: int, x4: int,
                             assoc: Associator | None = None) -> int:
    return pentagon_loop(ring, x, x1, x2, x3, x4, assoc).parity()


# -- closed forms --------------------------------------------------------------


def _pairs_below(values: Sequence[int]) -> int:
    """``sum_{b < b'} f(b) f(b')``."""
    total = 0
    running = 0
    for v in values:
        total += running * v
        running += v
    return total


def pentagon_edge_signs(ring: FusionRing, x: int, x1: int, x2: int, x3: int, x4: int) -> dict[str, int]:
    """Parity of every pentagon edge relative to the canonical vertex orders."""
    m = ring.m
    R = range(ring.rank)

    def blocks(f):
        return block_reindex_sign({(p, q): f(p, q) for p in R for q in R})

    t1 = blocks(lambda a, b: m(x, x1, a) * m(a, x2, b) * m(b, x3, x4))
    t2 = blocks(lambda c, b: m(x, c, b) * m(c, x1, x2) * m(b, x3, x4))
    t3 = blocks(lambda a, e: m(x, x1, a) * m(a, e, x4) * m(e, x2, x3))
    t4 = blocks(lambda d, e: m(x, d, x4) * m(d, x1, e) * m(e, x2, x3))
    t5 = blocks(lambda d, c: m(x, d, x4) * m(d, c, x3) * m(c, x1, x2))
    t6 = sum(m(x, c, b) * comb(m(c, x1, x2), 2) * comb(m(b, x3, x4), 2) for c in R for b in R)
    t7 = sum(
        comb(m(x, x1, a), 2) * (_pairs_below([m(a, x2, b) * m(b, x3, x4) for b in R])
                                + _pairs_below([m(a, e, x4) * m(e, x2, x3) for e in R]))
        for a in R
    )
    t8 = sum(
        comb(m(x, d, x4), 2) * (_pairs_below([m(d, x1, e) * m(e, x2, x3) for e in R])
                                + _pairs_below([m(d, c, x3) * m(c, x1, x2) for c in R]))
        for d in R
    )
    return {
        "e12": (t1 + t2) % 2,
        "e25": (t5 + t6) % 2,
        "e13": t7 % 2,
        "e34": (t3 + t4) % 2,
        "e45": t8 % 2,
    }


def pentagon_sign_closed(ring: FusionRing, x: int, x1: int, x2: int, x3: int, x4: int) -> int:
    """``alpha^x_{x1,x2,x3,x4}`` as the sum of the five edge parities."""
    return sum(pentagon_edge_signs(ring, x, x1, x2, x3, x4).values()) % 2


def pentagon_sign_six_term(ring: FusionRing, x: int, x1: int, x2: int, x3: int, x4: int) -> int:
    """Five double sums plus the transposition term, without the ``13``/``45`` corrections."""
    m = ring.m
    R = range(ring.rank)

    def blocks(f):
        return block_reindex_sign({(p, q): f(p, q) for p in R for q in R})

    total = (
        blocks(lambda a, b: m(x, x1, a) * m(a, x2, b) * m(b, x3, x4))
        + blocks(lambda c, b: m(x, c, b) * m(c, x1, x2) * m(b, x3, x4))
        + blocks(lambda a, e: m(x, x1, a) * m(a, e, x4) * m(e, x2, x3))
        + blocks(lambda d, e: m(x, d, x4) * m(d, x1, e) * m(e, x2, x3))
        + blocks(lambda d, c: m(x, d, x4) * m(d, c, x3) * m(c, x1, x2))
        + sum(m(x, c, b) * comb(m(c, x1, x2), 2) * comb(m(b, x3, x4), 2) for c in R for b in R)
    )
    return total % 2


# -- the cocycle -------------------------------------------------------------


@dataclass
class ObstructionCocycle:
    ring: FusionRing
    cochain: Cochain
    cocycle_checked: bool = False
    oracle_checked: bool = False
    # entries (x, x1, x2, x3, x4) where the closed form and the oracle differ
    mismatches: list = field(default_factory=list)

    def value(self, x1: int, x2: int, x3: int, x4: int) -> int:
        """Bitmask over S of the entry at ``(x1, x2, x3, x4)``."""
        return self.cochain(x1, x2, x3, x4)

    def component(self, x: int, x1: int, x2: int, x3: int, x4: int) -> int:
        return (self.value(x1, x2, x3, x4) >> x) & 1

    def is_cocycle(self) -> bool:
        return coboundary(self.cochain).is_zero()

    def to_dict(self) -> dict:
        names = self.ring.names
        alpha = {}
        for t, val in zip(self.cochain.tuples(), self.cochain.values):
            alpha[",".join(names[a] for a in t)] = {names[s]: (val >> s) & 1 for s in range(self.ring.rank)}
        return {
            "ring": ring_to_dict(self.ring),
            "alpha": alpha,
            "cocycle_checked": self.cocycle_checked,
            "oracle_checked": self.oracle_checked,
        }


def _entry_values(args) -> tuple[int, list]:
    ring, xs, verify = args
    assoc = Associator(ring) if verify else None
    value = 0
    bad = []
    for x in range(ring.rank):
        bit = pentagon_sign_closed(ring, x, *xs)
        if verify:
            oracle = pentagon_sign_bruteforce(ring, x, *xs, assoc=assoc)
            if oracle != bit:
                bad.append((x,) + tuple(xs))
                bit = oracle
        value |= bit << x
    return value, bad


def _chunk_values(args) -> list:
    ring, chunk, verify = args
    return [_entry_values((ring, xs, verify)) for xs in chunk]


def first_obstruction(ring: FusionRing, verify_oracle: bool = False, check_cocycle: bool = True,
                      jobs: int = 1) -> ObstructionCocycle:
    """Assemble ``alpha`` over all ``rank^4`` input tuples.

    With ``verify_oracle`` every entry is recomputed by brute force; on any
    disagreement the oracle value is kept and the entry is listed in
    ``mismatches``.  ``jobs > 1`` spreads the tuples over worker processes;
    the result does not depend on ``jobs``.
    """
    tuples = list(itertools.product(range(ring.rank), repeat=4))
    if jobs > 1 and len(tuples) > 1:
        size = -(-len(tuples) // jobs)
        chunks = [tuples[i:i + size] for i in range(0, len(tuples), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = [r for part in pool.map(_chunk_values, [(ring, c, verify_oracle) for c in chunks])
                       for r in part]
    else:
        results = _chunk_values((ring, tuples, verify_oracle))
    values = tuple(v for v, _ in results)
    mismatches = [b for _, bad in results for b in bad]
    cochain = Cochain(ring, 4, values)
    ob = ObstructionCocycle(ring, cochain, oracle_checked=verify_oracle, mismatches=mismatches)
    if check_cocycle:
        if not ob.is_cocycle():
            raise ArithmeticError("obstruction fails the cocycle condition")
        ob.cocycle_checked = True
    return ob


def transport_cochain(c: Cochain, order: Sequence[int], target: FusionRing) -> Cochain:
    """Rewrite a cochain on ``ring.relabel(order)`` as a cochain on the original ring ``target``.

    Index ``i`` of the relabelled ring is element ``order[i]`` of ``target``.
    """
    pos = {old: new for new, old in enumerate(order)}

    def fn(args):
        val = c(*(pos[a] for a in args))
        out = 0
        for i, old in enumerate(order):
            if (val >> i) & 1:
                out |= 1 << old
        return out

    return Cochain.from_function(target, c.degree, fn)
