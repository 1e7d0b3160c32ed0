"""Tests for 1,3-tree construction and Hist enumeration."""

import random

import pytest

from histsnark.trees import (
    HistWitness,
    build_ti,
    find_hists,
    find_ti_hists,
    is_ti_hist,
    oc_of_hist,
)
from tests.corpus import named_small, random_cubic
from tests.oracles import hists_oracle


def test_build_ti_counts():
    for depth in range(1, 7):
        t = build_ti(depth)
        assert t.leaf_count == 3 * 2 ** (depth - 1)
        assert t.n == 1 + 3 * (2**depth - 1)
        assert t.center == t.leaf_count
        assert len(t.edges) == t.n - 1
        assert t.parent[t.center] == -1
        for leaf in t.leaves:
            assert len(t.adj[leaf]) == 1
        for v in range(t.leaf_count, t.n):
            assert len(t.adj[v]) == 3


def test_build_ti_rejects_bad_depth():
    for depth in (0, -1, 7):
        with pytest.raises(ValueError):
            build_ti(depth)


def test_build_ti_labelling():
    # depth 3: centre 12, branch roots 13/16/19 in preorder, leaves in
    # contiguous blocks of four per branch
    t = build_ti(3)
    assert t.adj[t.center] == (13, 16, 19)
    assert t.adj[13] == (12, 14, 15)
    assert t.adj[14] == (0, 1, 13)
    assert t.adj[21] == (10, 11, 19)
    assert [t.branch_of(leaf) for leaf in t.leaves] == [0] * 4 + [1] * 4 + [2] * 4


def test_leaf_distances():
    t3 = build_ti(3)
    assert t3.leaf_distance[0][1] == 2
    assert t3.leaf_distance[1][2] == 4
    assert t3.leaf_distance[3][4] == 6
    assert t3.leaf_distance[0][11] == 6
    t4 = build_ti(4)
    assert t4.leaf_distance[0][1] == 2
    assert t4.leaf_distance[1][2] == 4
    assert t4.leaf_distance[3][4] == 6
    assert t4.leaf_distance[7][8] == 8
    assert t4.leaf_distance[0][23] == 8
    for a in t4.leaves:
        assert t4.leaf_distance[a][a] == 0
        for b in t4.leaves:
            assert t4.leaf_distance[a][b] % 2 == 0
            assert t4.leaf_distance[a][b] == t4.leaf_distance[b][a]


def test_find_hists_matches_oracle():
    graphs = dict(named_small())
    graphs["rand12a"] = random_cubic(12, 3)
    graphs["rand12b"] = random_cubic(12, 17)
    expected = {
        "k4": 4,
        "k33": 9,
        "prism": 3,
        "cube": 0,
        "wagner": 8,
        "pentaprism": 0,
        "petersen": 10,
        "rand12a": 6,
        "rand12b": 2,
    }
    for name, g in graphs.items():
        if g.n > 12:
            continue
        oracle = sorted(tuple(sorted(s)) for s in hists_oracle(g))
        result = find_hists(g, limit=10**6)
        assert not result.truncated
        assert sorted(w.tree_edges for w in result.witnesses) == oracle
        assert len(oracle) == expected[name]


def test_find_hists_truncation():
    g = dict(named_small())["petersen"]
    by_budget = find_hists(g, budget=10)
    assert by_budget.truncated
    assert by_budget.nodes <= 11
    by_limit = find_hists(g, limit=3)
    assert by_limit.truncated
    assert len(by_limit.witnesses) == 3


def test_hist_witness_fields():
    g = dict(named_small())["k4"]
    result = find_hists(g)
    for w in result.witnesses:
        assert isinstance(w, HistWitness)
        assert len(w.tree_edges) == 3
        assert len(w.leaves) == 3
        assert w.oc == (3,)
        assert w.oc == oc_of_hist(g, w.tree_edges)


def test_oc_of_hist_rejects_non_hists():
    g = dict(named_small())["petersen"]
    with pytest.raises(ValueError):
        oc_of_hist(g, g.edges[: g.n - 1])
    with pytest.raises(ValueError):
        oc_of_hist(g, g.edges[: g.n - 2])
    with pytest.raises(ValueError):
        oc_of_hist(g, [(0, 1)] * (g.n - 1))


def test_find_ti_hists_known_graphs():
    graphs = dict(named_small())
    assert len(find_ti_hists(graphs["k4"], 1)) == 4
    assert len(find_ti_hists(graphs["prism"], 1)) == 0
    assert len(find_ti_hists(graphs["k33"], 1)) == 0
    assert len(find_ti_hists(graphs["pentaprism"], 2)) == 0
    petersen = find_ti_hists(graphs["petersen"], 2)
    assert len(petersen) == 10
    assert {w.oc for w in petersen} == {(6,)}
    # wrong depth for the vertex count gives nothing
    assert find_ti_hists(graphs["petersen"], 1) == []
    assert find_ti_hists(graphs["k4"], 2) == []


def test_find_ti_hists_agrees_with_predicate():
    rng = random.Random(7)
    graphs = [dict(named_small())["petersen"]] + [
        random_cubic(10, rng.randrange(10**6)) for _ in range(10)
    ]
    for g in graphs:
        direct = sorted(w.tree_edges for w in find_ti_hists(g, 2))
        checked = sorted(
            w.tree_edges
            for w in find_hists(g, limit=10**6).witnesses
            if is_ti_hist(g, w.tree_edges, 2)
        )
        assert direct == checked


def test_is_ti_hist_on_tree_completion():
    # joining the leaves of T_2 into a hexagon keeps the tree a valid Hist
    t = build_ti(2)
    from histsnark.graph import CubicGraph

    edges = list(t.edges) + [(0, 3), (3, 1), (1, 4), (4, 2), (2, 5), (5, 0)]
    g = CubicGraph.from_edges(t.n, edges)
    assert is_ti_hist(g, t.edges, 2)
    assert not is_ti_hist(g, t.edges, 1)
    assert oc_of_hist(g, t.edges) == (6,)
