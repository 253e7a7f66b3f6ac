"""Planar rooted trees, their contractions and gluings, and marked index sets.

A vertex (or the edge directly above it) is addressed by its path from the
root: the tuple of child positions taken on the way down.  The root is ``()``.

Trees serialize to balanced-parenthesis strings::

    tree := ""                        (a bare edge / leaf)
          | "(" tree ("," tree)+ ")"  (an internal vertex with >= 2 children)

so ``"(,)"`` is the tree with one vertex and two ends, and ``"((,),)"``
the left comb on three ends.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .fusion import BoundsError, EnvelopingElement, FusionRing, multiply

Path = tuple[int, ...]

MAX_ENDS = 8


@dataclass(frozen=True, order=False)
class PlanarTree:
    children: tuple["PlanarTree", ...] = ()

    def __post_init__(self):
        if len(self.children) == 1:
            raise ValueError("internal vertices need at least two children")

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def n_ends(self) -> int:
        return 1 if self.is_leaf else sum(c.n_ends for c in self.children)

    @property
    def n_vertices(self) -> int:
        return 0 if self.is_leaf else 1 + sum(c.n_vertices for c in self.children)

    @property
    def stratum(self) -> int:
        """Index ``i`` such that the tree has ``k - 1 - i`` internal vertices."""
        return self.n_ends - 1 - self.n_vertices

    @property
    def is_binary(self) -> bool:
        return self.is_leaf or (len(self.children) == 2 and all(c.is_binary for c in self.children))

    def __str__(self) -> str:
        return serialize(self)

    def __repr__(self) -> str:
        return f"PlanarTree({serialize(self)!r})"

    def at(self, path: Path) -> "PlanarTree":
        node = self
        for i in path:
            node = node.children[i]
        return node


LEAF = PlanarTree()


def serialize(t: PlanarTree) -> str:
    if t.is_leaf:
        return ""
    return "(" + ",".join(serialize(c) for c in t.children) + ")"


def parse_tree(text: str) -> PlanarTree:
    pos = 0

    def node() -> PlanarTree:
        nonlocal pos
        if pos < len(text) and text[pos] == "(":
            pos += 1
            kids = [node()]
            while pos < len(text) and text[pos] == ",":
                pos += 1
                kids.append(node())
            if pos >= len(text) or text[pos] != ")":
                raise ValueError(f"expected ')' at position {pos} in {text!r}")
            pos += 1
            if len(kids) < 2:
                raise ValueError(f"vertex with a single child in {text!r}")
            return PlanarTree(tuple(kids))
        return LEAF

    tree = node()
    if pos != len(text):
        raise ValueError(f"trailing characters in {text!r}")
    return tree


def corolla(k: int) -> PlanarTree:
    """The tree with ``k`` ends and a single vertex."""
    if k < 2:
        raise ValueError("a corolla needs at least two ends")
    return PlanarTree((LEAF,) * k)


def binary(left: PlanarTree, right: PlanarTree) -> PlanarTree:
    return PlanarTree((left, right))


def left_comb(k: int) -> PlanarTree:
    t = LEAF
    for _ in range(k - 1):
        t = binary(t, LEAF)
    return t


def right_comb(k: int) -> PlanarTree:
    t = LEAF
    for _ in range(k - 1):
        t = binary(LEAF, t)
    return t


def _compositions(k: int, parts_min: int = 2) -> Iterator[tuple[int, ...]]:
    for parts in range(parts_min, k + 1):
        for cuts in itertools.combinations(range(1, k), parts - 1):
            bounds = (0,) + cuts + (k,)
            yield tuple(bounds[i + 1] - bounds[i] for i in range(parts))


@lru_cache(maxsize=None)
def _all_trees(k: int) -> tuple[PlanarTree, ...]:
    if k == 1:
        return (LEAF,)
    out = []
    for comp in _compositions(k):
        for kids in itertools.product(*(_all_trees(p) for p in comp)):
            out.append(PlanarTree(tuple(kids)))
    return tuple(out)


def enumerate_trees(k: int, stratum: int | None = None) -> list[PlanarTree]:
    """All planar trees with ``k`` ends, optionally only those of one stratum.

    The order is deterministic: by number of root children, then by the
    composition of ends among them, then recursively.
    """
    if not 2 <= k <= MAX_ENDS:
        raise BoundsError(f"number of ends must be in 2..{MAX_ENDS}, got {k}")
    trees = _all_trees(k)
    if stratum is None:
        return list(trees)
    return [t for t in trees if t.stratum == stratum]


def replace_at(t: PlanarTree, path: Path, new: PlanarTree) -> PlanarTree:
    if not path:
        return new
    i = path[0]
    kids = list(t.children)
    kids[i] = replace_at(kids[i], path[1:], new)
    return PlanarTree(tuple(kids))


def vertex_order(t: PlanarTree) -> list[Path]:
    """Internal vertices by depth, left to right within a depth (breadth-first)."""
    if t.is_leaf:
        return []
    out = []
    queue = deque([((), t)])
    while queue:
        path, node = queue.popleft()
        out.append(path)
        for i, child in enumerate(node.children):
            if not child.is_leaf:
                queue.append((path + (i,), child))
    return out


def internal_edges(t: PlanarTree) -> list[Path]:
    """Edges joining two internal vertices, named by their upper vertex, in vertex order."""
    return [p for p in vertex_order(t) if p]


def leaf_paths(t: PlanarTree) -> list[Path]:
    def walk(node: PlanarTree, path: Path) -> Iterator[Path]:
        if node.is_leaf:
            yield path
        else:
            for i, c in enumerate(node.children):
                yield from walk(c, path + (i,))

    return list(walk(t, ()))


def contract_edge(t: PlanarTree, edge: Path) -> PlanarTree:
    """Merge the vertex at ``edge`` into its parent, splicing its children in place."""
    if not edge:
        raise ValueError("the root edge cannot be contracted")
    node = t.at(edge)
    if node.is_leaf:
        raise ValueError(f"edge {edge} ends in a leaf")
    parent_path, i = edge[:-1], edge[-1]
    parent = t.at(parent_path)
    kids = parent.children[:i] + node.children + parent.children[i + 1:]
    return replace_at(t, parent_path, PlanarTree(kids))


def contractions(t: PlanarTree) -> list[PlanarTree]:
    return [contract_edge(t, e) for e in internal_edges(t)]


def graft(t: PlanarTree, subtrees: Sequence[PlanarTree]) -> PlanarTree:
    """Glue the roots of ``subtrees`` onto the ends of ``t`` (left to right)."""
    if len(subtrees) != t.n_ends:
        raise ValueError(f"need {t.n_ends} subtrees, got {len(subtrees)}")
    it = iter(subtrees)

    def rebuild(node: PlanarTree) -> PlanarTree:
        if node.is_leaf:
            return next(it)
        return PlanarTree(tuple(rebuild(c) for c in node.children))

    return rebuild(t)


def graft_at(t: PlanarTree, end: int, sub: PlanarTree) -> PlanarTree:
    """Glue ``sub`` onto end number ``end`` (1-based) of ``t``."""
    subs = [LEAF] * t.n_ends
    subs[end - 1] = sub
    return graft(t, subs)


def evaluate(ring: FusionRing, t: PlanarTree, inputs: Sequence[int]) -> EnvelopingElement:
    """Product of ``inputs`` in the enveloping ring, bracketed as ``t``."""
    if len(inputs) != t.n_ends:
        raise ValueError("one input per end is required")
    it = iter(inputs)

    def ev(node: PlanarTree) -> EnvelopingElement:
        if node.is_leaf:
            return ring.basis(next(it))
        vals = [ev(c) for c in node.children]
        acc = vals[0]
        for v in vals[1:]:
            acc = multiply(acc, v)
        return acc

    return ev(t)


# -- markings --------------------------------------------------------------


@dataclass(frozen=True)
class Marking:
    """Labels on every edge of a binary tree; the root edge is ``()``."""

    tree: PlanarTree
    labels: dict = field(hash=False)

    def vertex_labels(self, path: Path) -> tuple[int, int, int]:
        """(output, left input, right input) at the vertex ``path``."""
        return self.labels[path], self.labels[path + (0,)], self.labels[path + (1,)]

    def weight(self, ring: FusionRing) -> int:
        w = 1
        for v in vertex_order(self.tree):
            out, a, b = self.vertex_labels(v)
            w *= ring.m(out, a, b)
        return w


def _require_binary(t: PlanarTree, inputs: Sequence[int]) -> None:
    if t.is_leaf or not t.is_binary:
        raise ValueError("marked index sets need a binary tree with at least two ends")
    if len(inputs) != t.n_ends:
        raise ValueError(f"tree has {t.n_ends} ends but {len(inputs)} inputs were given")


def markings(ring: FusionRing, t: PlanarTree, inputs: Sequence[int], output: int) -> Iterator[Marking]:
    """Every edge-labelling with the prescribed ends and root, internal labels in lex order."""
    _require_binary(t, inputs)
    fixed = dict(zip(leaf_paths(t), inputs))
    fixed[()] = output
    edges = internal_edges(t)
    for labels in itertools.product(range(ring.rank), repeat=len(edges)):
        lab = dict(fixed)
        lab.update(zip(edges, labels))
        yield Marking(t, lab)


@dataclass(frozen=True)
class OrderedIndexSet:
    """A totally ordered finite set; members are listed in increasing order.

    For a marked index set each member is ``(labels, indices)``: internal edge
    labels in vertex order (root excluded) and one 0-based multiplicity index
    per vertex in vertex order.
    """

    members: tuple
    tree: PlanarTree | None = None
    _pos: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        pos = {m: i for i, m in enumerate(self.members)}
        if len(pos) != len(self.members):
            raise ValueError("members must be distinct")
        object.__setattr__(self, "_pos", pos)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i: int):
        return self.members[i]

    def __contains__(self, item) -> bool:
        return item in self._pos

    def position(self, member) -> int:
        return self._pos[member]


@lru_cache(maxsize=None)
def _layout(t: PlanarTree):
    """Per-vertex slots ``(out, left, right)`` into a flat label vector.

    Slots ``0..len(edges)-1`` are internal edges in vertex order, then the
    root, then the leaves left to right.
    """
    if t.is_leaf or not t.is_binary:
        raise ValueError("marked index sets need a binary tree with at least two ends")
    verts = vertex_order(t)
    edges = verts[1:]
    slot = {p: i for i, p in enumerate(edges)}
    slot[()] = len(edges)
    for k, p in enumerate(leaf_paths(t)):
        slot[p] = len(edges) + 1 + k
    return len(edges), t.n_ends, tuple((slot[v], slot[v + (0,)], slot[v + (1,)]) for v in verts)


def marked_index_set(ring: FusionRing, t: PlanarTree, inputs: Sequence[int], output: int) -> OrderedIndexSet:
    """Disjoint union over markings of the products of local multiplicity ranges.

    Ordered first by the internal-edge labels, then lexicographically by the
    per-vertex indices, both following :func:`vertex_order`.
    """
    n_edges, n_ends, slots = _layout(t)
    if len(inputs) != n_ends:
        raise ValueError(f"tree has {n_ends} ends but {len(inputs)} inputs were given")
    table = ring.table
    fixed = (output,) + tuple(inputs)
    members = []
    for labels in itertools.product(range(ring.rank), repeat=n_edges):
        lab = labels + fixed
        sizes = [table[lab[a]][lab[b]][lab[o]] for o, a, b in slots]
        if 0 in sizes:
            continue
        for idx in itertools.product(*(range(s) for s in sizes)):
            members.append((labels, idx))
    return OrderedIndexSet(tuple(members), t)
