"""Tests for 3-edge-colorability and 1,3-tree coloring counts."""

import random

import pytest

from histsnark.coloring import (
    EdgeColoring,
    color_tree_end_edge_counts,
    is_three_edge_colorable,
    tree_colorings,
)
from histsnark.trees import build_ti
from tests.corpus import named_small, oracle_corpus_small, random_cubic
from tests.oracles import colorable_oracle


def test_matches_oracle_on_small_corpus():
    for g in oracle_corpus_small().values():
        want = colorable_oracle(g)
        got, cert = is_three_edge_colorable(g)
        assert got == want
        if got:
            assert cert is not None and cert.is_proper_for(g)
        else:
            assert cert is None


def test_matches_oracle_on_random_graphs():
    rng = random.Random(99)
    for _ in range(30):
        g = random_cubic(rng.choice([8, 10, 12]), rng.randrange(10**6))
        want = colorable_oracle(g)
        got, cert = is_three_edge_colorable(g)
        assert got == want
        if got:
            assert cert.is_proper_for(g)


def test_petersen_not_colorable():
    got, cert = is_three_edge_colorable(dict(named_small())["petersen"])
    assert got is False
    assert cert is None


def test_k33_colorable_with_valid_certificate():
    g = dict(named_small())["k33"]
    got, cert = is_three_edge_colorable(g)
    assert got is True
    assert cert.is_proper_for(g)
    for u, v in g.edges:
        assert cert.color(u, v) == cert.color(v, u)


def test_is_proper_for_detects_bad_colorings():
    g = dict(named_small())["k4"]
    _, cert = is_three_edge_colorable(g)
    broken = dict(cert.assignment)
    e0, e1 = g.edges[0], g.edges[1]
    broken[e1] = broken[e0]
    assert not EdgeColoring(broken).is_proper_for(g)
    partial = dict(cert.assignment)
    del partial[e0]
    assert not EdgeColoring(partial).is_proper_for(g)


def test_tree_colorings_proper_and_distinct():
    t = build_ti(2)
    seen = set()
    for coloring in tree_colorings(t.n, t.edges, t.center):
        assert set(coloring) == set(t.edges)
        for v in range(t.n):
            colors = [coloring[(min(v, w), max(v, w))] for w in t.adj[v]]
            assert len(set(colors)) == len(colors)
        seen.add(tuple(sorted(coloring.items())))
    assert len(seen) == 48


def test_end_edge_counts_balanced_small_depths():
    # depths 1..3 exhaustively: 6 * 2^(k-1) colorings over k internal
    # vertices, all with equal end-edge color counts
    for depth, balanced in ((1, (1, 1, 1)), (2, (2, 2, 2)), (3, (4, 4, 4))):
        t = build_ti(depth)
        triples = color_tree_end_edge_counts(t)
        assert len(triples) == 6 * 2 ** (t.n - t.leaf_count - 1)
        assert set(triples) == {balanced}


def test_end_edge_counts_balanced_depth4_sampled():
    t = build_ti(4)
    triples = color_tree_end_edge_counts(t, sample=2000, seed=11)
    assert len(triples) == 2000
    assert set(triples) == {(8, 8, 8)}
    again = color_tree_end_edge_counts(t, sample=2000, seed=11)
    assert triples == again


def test_end_edge_count_parity():
    # classical parity fact, weaker than exact balance
    for depth in (1, 2, 3):
        for s1, s2, s3 in color_tree_end_edge_counts(build_ti(depth)):
            assert s1 % 2 == s2 % 2 == s3 % 2


def test_tree_colorings_rejects_leaf_root():
    t = build_ti(2)
    with pytest.raises(ValueError):
        list(tree_colorings(t.n, t.edges, 0))
