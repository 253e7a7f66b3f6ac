from __future__ import annotations

import itertools
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fusionobs.fusion import BoundsError, enumerate_fusion_rings, nary_constant, one_element_ring, rank2_ring
from fusionobs.trees import (
    LEAF,
    PlanarTree,
    binary,
    contract_edge,
    contractions,
    corolla,
    enumerate_trees,
    evaluate,
    graft,
    graft_at,
    internal_edges,
    left_comb,
    marked_index_set,
    markings,
    parse_tree,
    right_comb,
    serialize,
    vertex_order,
)

FIB = rank2_ring(1, 1)


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def test_binary_counts_are_catalan():
    for k in range(2, 9):
        assert len(enumerate_trees(k, 0)) == catalan(k - 1)


def test_small_enumerations():
    assert enumerate_trees(2) == [corolla(2)]
    assert enumerate_trees(4, 2) == [corolla(4)]
    assert len(enumerate_trees(4, 1)) == 5


def test_enumeration_bounds():
    with pytest.raises(BoundsError):
        enumerate_trees(1)
    with pytest.raises(BoundsError):
        enumerate_trees(9)


def test_trees_distinct_and_strata():
    for k in range(2, 7):
        trees = enumerate_trees(k)
        assert len({serialize(t) for t in trees}) == len(trees)
        for t in trees:
            assert t.n_ends == k
            assert 0 <= t.stratum <= k - 2
        # small Schroeder numbers 1, 3, 11, 45, 197
        assert len(trees) == {2: 1, 3: 3, 4: 11, 5: 45, 6: 197}[k]


def test_serialization_round_trip():
    for k in range(2, 7):
        for t in enumerate_trees(k):
            assert parse_tree(serialize(t)) == t
    assert serialize(left_comb(3)) == "((,),)"
    for bad in ["(", "(,", "()", "(,)x", "((,))"]:
        with pytest.raises(ValueError):
            parse_tree(bad)


def test_single_child_rejected():
    with pytest.raises(ValueError):
        PlanarTree((LEAF,))


def test_contract_left_comb_three():
    t = left_comb(3)
    (edge,) = internal_edges(t)
    assert contract_edge(t, edge) == corolla(3)


def test_contract_right_comb_lower_edge():
    t = right_comb(4)
    out = contract_edge(t, (1,))
    assert out == parse_tree("(,,(,))")
    assert out.stratum == 1


def test_corolla_has_no_internal_edges():
    with pytest.raises(ValueError):
        contract_edge(corolla(4), (0,))
    with pytest.raises(ValueError):
        contract_edge(right_comb(3), ())
    assert contractions(corolla(4)) == []


def test_contractions_raise_stratum_and_terminate():
    for k in range(2, 7):
        for t in enumerate_trees(k):
            for s in contractions(t):
                assert s.stratum == t.stratum + 1
            cur = t
            while internal_edges(cur):
                cur = contract_edge(cur, internal_edges(cur)[0])
            assert cur == corolla(k)


def test_pentagon_incidence():
    binaries = enumerate_trees(4, 0)
    middles = enumerate_trees(4, 1)
    assert len(binaries) == 5 and len(middles) == 5
    assert len(enumerate_trees(4, 2)) == 1
    hits = {serialize(m): 0 for m in middles}
    pairs = 0
    for t in binaries:
        cs = contractions(t)
        assert len(cs) == 2
        for c in cs:
            hits[serialize(c)] += 1
            pairs += 1
    assert pairs == 10
    assert set(hits.values()) == {2}


def test_graft_examples():
    t2 = corolla(2)
    assert graft_at(t2, 1, t2) == left_comb(3)
    assert graft(t2, [t2, t2]) == binary(t2, t2)
    g = graft_at(t2, 2, corolla(3))
    assert g.n_ends == 4 and g.stratum == 1
    with pytest.raises(ValueError):
        graft(t2, [t2])


def test_graft_is_associative():
    shapes = [t for k in range(1, 4) for t in ([LEAF] if k == 1 else enumerate_trees(k))]
    for outer in shapes:
        for middle in itertools.product(shapes, repeat=outer.n_ends):
            total = outer.n_ends + sum(m.n_ends - 1 for m in middle)
            if total > 6:
                continue
            stage1 = graft(outer, list(middle))
            n = stage1.n_ends
            inner = [LEAF if i % 2 else corolla(2) for i in range(n)]
            if n + sum(s.n_ends - 1 for s in inner) > 8:
                continue
            # graft in two stages, or graft pre-grafted middles
            it = iter(inner)
            pre = [graft(m, [next(it) for _ in range(m.n_ends)]) for m in middle]
            assert graft(stage1, inner) == graft(outer, pre)


def test_vertex_order_examples():
    balanced = binary(corolla(2), corolla(2))
    assert vertex_order(balanced) == [(), (0,), (1,)]
    assert vertex_order(left_comb(4)) == [(), (0,), (0, 0)]
    assert vertex_order(corolla(2)) == [()]


def test_evaluate_matches_nary():
    t = right_comb(4)
    v = evaluate(FIB, t, [1, 1, 1, 1])
    assert v.coeffs == (2, 3)


def test_marked_set_examples():
    s = marked_index_set(FIB, right_comb(3), [1, 1, 1], 1)
    assert len(s) == 2
    assert [m[0] for m in s] == [(0,), (1,)]
    ring = rank2_ring(2, 1)
    for a, b, c in itertools.product(range(2), repeat=3):
        assert len(marked_index_set(ring, corolla(2), [a, b], c)) == ring.m(c, a, b)
    balanced = binary(corolla(2), corolla(2))
    big = marked_index_set(ring, balanced, [1, 1, 1, 1], 1)
    assert len(big) == 12 == nary_constant(ring, 1, [1, 1, 1, 1])


def test_marked_set_order_is_lexicographic():
    ring = rank2_ring(2, 1)
    s = marked_index_set(ring, left_comb(4), [1, 1, 1, 1], 1)
    assert list(s.members) == sorted(s.members)
    assert s.position(s[3]) == 3


def test_marked_set_needs_binary_tree():
    with pytest.raises(ValueError):
        marked_index_set(FIB, corolla(3), [1, 1, 1], 1)
    with pytest.raises(ValueError):
        marked_index_set(FIB, corolla(2), [1, 1, 1], 1)


def test_markings_respect_boundary():
    t = left_comb(3)
    for mk in markings(FIB, t, [1, 0, 1], 0):
        assert mk.labels[()] == 0
        assert [mk.labels[p] for p in [(0, 0), (0, 1), (1,)]] == [1, 0, 1]


def test_marked_set_size_is_tree_independent():
    rings = [one_element_ring(2)] + list(enumerate_fusion_rings(2, 2, False)) + list(
        enumerate_fusion_rings(3, 1, True))
    for ring in rings[::3]:
        for n in (2, 3, 4):
            for inputs in itertools.product(range(ring.rank), repeat=n):
                for y in range(ring.rank):
                    want = nary_constant(ring, y, inputs)
                    for t in enumerate_trees(n, 0):
                        assert len(marked_index_set(ring, t, inputs, y)) == want


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6).flatmap(lambda k: st.sampled_from(enumerate_trees(k, 0))),
       st.integers(0, 3), st.integers(0, 3))
def test_marked_set_size_hypothesis(t, m, n):
    ring = rank2_ring(m, n)
    inputs = [1] * t.n_ends
    for y in range(2):
        assert len(marked_index_set(ring, t, inputs, y)) == nary_constant(ring, y, inputs)
