"""Planar-tree enumeration, contraction order, and serialization."""

from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from clustercx import trees
from clustercx.errors import CapError, OrderError, StabilityError
from clustercx.trees import LEAF, PlanarTree, vertex


def catalan(n):
    return comb(2 * n, n) // (n + 1)


class TestEnumeration:
    def test_frozen_counts_l4(self):
        assert len(trees.enumerate_types(4, 0, 0)) == 1
        assert len(trees.enumerate_types(4, 0, 1)) == 5
        assert len(trees.enumerate_types(4, 0, 2)) == 5

    def test_maximal_catalan(self):
        for l in range(2, 9):
            assert len(trees.maximal_types(l, 0)) == catalan(l - 1)

    def test_special_corolla(self):
        assert len(trees.enumerate_types(1, 0, 0)) == 1
        with pytest.raises(StabilityError):
            trees.enumerate_types(1, 0, 1)

    def test_caps(self):
        with pytest.raises(CapError):
            trees.enumerate_types(11, 0, 0)
        with pytest.raises(CapError):
            trees.enumerate_types(2, 5, 0)

    def test_unique_and_consistent(self):
        for l, k in [(3, 0), (4, 0), (2, 1), (3, 1), (2, 2)]:
            seen = set()
            for e in range(0, 2 * (l - 2 + 2 * k) + 2):
                for t in trees.enumerate_types(l, k, e):
                    assert t not in seen
                    seen.add(t)
                    assert t.num_leaves == l
                    assert t.num_marks == k
                    assert t.n_edges == e
                    assert t.is_stable

    def test_colored_axiom_on_enumeration(self):
        for n_edges in range(0, 4):
            for t in trees.enumerate_colored_types(3, 0, n_edges):
                assert t.check_colored_axiom()
                assert t.n_colored >= 1


class TestContraction:
    def test_contract_merges(self):
        t = PlanarTree(
            vertex(0, False, (LEAF, vertex(0, False, (LEAF, LEAF))))
        )
        c, edge_map = trees.contract_set(t, {(1,)})
        assert c.root == vertex(0, False, (LEAF, LEAF, LEAF))
        assert edge_map == {}

    def test_leq_and_witness(self):
        top = trees.enumerate_types(4, 0, 0)[0]
        for t in trees.enumerate_types(4, 0, 2):
            assert trees.leq(top, t)
            w = trees.contraction_witness(t, t)
            assert w == frozenset()

    @given(st.integers(3, 5), st.integers(0, 2))
    @settings(max_examples=20, deadline=None)
    def test_contraction_preserves_params(self, l, e):
        ts = trees.enumerate_types(l, 0, e)
        for t in ts[:5]:
            for edge in t.edges():
                c = trees.contract(t, edge)
                assert c.num_leaves == l
                assert c.n_edges == e - 1


class TestSerialization:
    def test_round_trip(self):
        for t in trees.enumerate_types(4, 1, 2)[:10]:
            assert trees.from_obj(trees.to_obj(t)) == t

    def test_order_error(self):
        with pytest.raises(OrderError):
            trees.from_obj({"b": 3, "i": 0, "col": False, "children": ["x", "x"]})
