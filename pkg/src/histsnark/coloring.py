"""Proper 3-edge-colorings: decision procedure and 1,3-tree color counts.

The decision procedure is an exhaustive backtracker, so a negative answer is
a proof of non-colorability.  For 1,3-trees every proper coloring is
reachable by fixing the colors around the root and picking one of two orders
at each further internal vertex, which gives both an exhaustive enumerator
and an exactly uniform sampler.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from itertools import permutations

from histsnark.graph import CubicGraph
from histsnark.trees import TiTree

_BIT_TO_COLOR = {1: 1, 2: 2, 4: 3}


@dataclass(frozen=True)
class EdgeColoring:
    """A proper 3-edge-coloring, as a map from (u, v) with u < v to 1..3."""

    assignment: dict[tuple[int, int], int]

    def color(self, u: int, v: int) -> int:
        return self.assignment[(min(u, v), max(u, v))]

    def is_proper_for(self, g: CubicGraph) -> bool:
        if set(self.assignment) != set(g.edges):
            return False
        if any(c not in (1, 2, 3) for c in self.assignment.values()):
            return False
        for v in range(g.n):
            seen = {self.color(v, w) for w in g.adj[v]}
            if len(seen) != len(g.adj[v]):
                return False
        return True


def is_three_edge_colorable(g: CubicGraph) -> tuple[bool, EdgeColoring | None]:
    """Decide 3-edge-colorability; on success also return a checked coloring.

    Backtracking on edges with most-constrained-first selection.  The first
    edge is fixed to color 1 and its lowest neighbour to color 2, which is
    harmless for the decision: colors can always be permuted to match.
    """
    edges = g.edges
    m = len(edges)
    eid = {e: i for i, e in enumerate(edges)}
    incident: list[list[int]] = [[] for _ in range(m)]
    for v in range(g.n):
        ids = [eid[(min(v, w), max(v, w))] for w in g.adj[v]]
        for a in ids:
            for b in ids:
                if a != b:
                    incident[a].append(b)
    colors = [0] * m
    avail = [7] * m

    def assign(e: int, c: int, trail: list[int]) -> bool:
        colors[e] = c
        for f in incident[e]:
            if not colors[f] and avail[f] & c:
                avail[f] &= ~c
                trail.append(f)
                if not avail[f]:
                    return False
        return True

    def undo(e: int, c: int, trail: list[int]) -> None:
        colors[e] = 0
        for f in trail:
            avail[f] |= c

    def solve() -> bool:
        pick, fewest = -1, 4
        for f in range(m):
            if not colors[f]:
                k = avail[f].bit_count()
                if k < fewest:
                    pick, fewest = f, k
                    if k <= 1:
                        break
        if pick < 0:
            return True
        bits = avail[pick]
        while bits:
            c = bits & -bits
            bits ^= c
            trail: list[int] = []
            if assign(pick, c, trail) and solve():
                return True
            undo(pick, c, trail)
        return False

    trail0: list[int] = []
    trail1: list[int] = []
    first_nbr = min(incident[0])
    ok = (
        assign(0, 1, trail0)
        and assign(first_nbr, 2, trail1)
        and solve()
    )
    if not ok:
        return False, None
    cert = EdgeColoring({e: _BIT_TO_COLOR[colors[i]] for i, e in enumerate(edges)})
    if not cert.is_proper_for(g):
        raise RuntimeError("coloring search produced an improper certificate")
    return True, cert


def _rooted_internal_order(n: int, edges, root: int):
    """BFS orientation of a 1,3-tree rooted at an internal vertex.

    Returns (order, parent_edge, child_edges): the internal vertices in BFS
    order, each vertex's edge to its parent, and each internal vertex's edges
    to its children in ascending child order.
    """
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    if len(nbrs[root]) != 3:
        raise ValueError("root must be an internal vertex")
    parent_edge: list[tuple[int, int] | None] = [None] * n
    order = []
    seen = [False] * n
    seen[root] = True
    q = deque([root])
    while q:
        u = q.popleft()
        if len(nbrs[u]) == 3:
            order.append(u)
        for w in sorted(nbrs[u]):
            if not seen[w]:
                seen[w] = True
                parent_edge[w] = (min(u, w), max(u, w))
                q.append(w)
    child_edges = [
        [
            (min(u, w), max(u, w))
            for w in sorted(nbrs[u])
            if parent_edge[w] == (min(u, w), max(u, w))
        ]
        for u in order
    ]
    return order, parent_edge, child_edges


def tree_colorings(n: int, edges, root: int):
    """Yield every proper 3-edge-coloring of a 1,3-tree as an edge->color dict.

    Colors around the root take all six permutations; every other internal
    vertex orders its two remaining colors both ways.
    """
    order, parent_edge, child_edges = _rooted_internal_order(n, edges, root)
    coloring: dict[tuple[int, int], int] = {}

    def extend(k: int):
        if k == len(order):
            yield dict(coloring)
            return
        u = order[k]
        kids = child_edges[k]
        up = parent_edge[u]
        free = sorted({1, 2, 3} - ({coloring[up]} if up else set()))
        if len(kids) == 3:
            combos = permutations(free)
        else:
            combos = (tuple(free), (free[1], free[0]))
        for combo in combos:
            for e, c in zip(kids, combo):
                coloring[e] = c
            yield from extend(k + 1)
        for e in kids:
            del coloring[e]

    yield from extend(0)


class TreeCompletionColorer:
    """Fast 3-edge-colorability decision for one fixed tree plus a 2-factor.

    Same search as the generic decider over the same lexicographic edge
    order, minus graph construction and the certificate, plus one exact
    tree-specific shortcut: a subtree whose leaves pair only among
    themselves hangs on a bridge, and a bridged cubic graph is never
    3-edge-colorable, so such completions are rejected before searching.
    Verdicts agree with the generic backtracker.
    """

    def __init__(self, tree: TiTree):
        self.tree = tree
        l = tree.leaf_count
        ancestors = []
        for leaf in range(l):
            path = []
            v = tree.parent[leaf]
            while v != tree.center and v >= 0:
                path.append(v - (l + 1))
                v = tree.parent[v]
            ancestors.append(frozenset(path))
        self.cut_count = tree.n - l - 1
        self.crossings = {}
        for a in range(l):
            for b in range(a + 1, l):
                self.crossings[(a, b)] = tuple(ancestors[a] ^ ancestors[b])
        self.tree_edges = sorted((min(e), max(e)) for e in tree.edges)

    def colorable(self, partners) -> bool:
        """Partners give each leaf its two 2-factor neighbours."""
        l = self.tree.leaf_count
        pending = [0] * self.cut_count
        factor = []
        for a in range(l):
            for b in partners[a]:
                if a < b:
                    factor.append((a, b))
                    for c in self.crossings[(a, b)]:
                        pending[c] += 1
        if 0 in pending:
            return False
        ends = sorted(factor + self.tree_edges)
        m = len(ends)
        at_vertex: list[list[int]] = [[] for _ in range(self.tree.n)]
        for i, (u, v) in enumerate(ends):
            at_vertex[u].append(i)
            at_vertex[v].append(i)
        incident = [
            [j for w in e for j in at_vertex[w] if j != i]
            for i, e in enumerate(ends)
        ]
        colors = [0] * m
        avail = [7] * m

        def assign(e: int, c: int, trail: list[int]) -> bool:
            colors[e] = c
            for f in incident[e]:
                if not colors[f] and avail[f] & c:
                    avail[f] &= ~c
                    trail.append(f)
                    if not avail[f]:
                        return False
            return True

        def undo(e: int, c: int, trail: list[int]) -> None:
            colors[e] = 0
            for f in trail:
                avail[f] |= c

        def solve() -> bool:
            pick, fewest = -1, 4
            for f in range(m):
                if not colors[f]:
                    k = avail[f].bit_count()
                    if k < fewest:
                        pick, fewest = f, k
                        if k <= 1:
                            break
            if pick < 0:
                return True
            bits = avail[pick]
            while bits:
                c = bits & -bits
                bits ^= c
                trail: list[int] = []
                if assign(pick, c, trail) and solve():
                    return True
                undo(pick, c, trail)
            return False

        # fixing the first edge's color and breaking the tie at its lowest
        # neighbour is harmless, as in the generic decider
        if not assign(0, 1, []):
            return False
        if not assign(min(incident[0]), 2, []):
            return False
        return solve()


def color_tree_end_edge_counts(
    t: TiTree, sample: int | None = None, seed: int | None = None
) -> list[tuple[int, int, int]]:
    """End-edge color count triples (s1, s2, s3) over proper colorings of T_i.

    Exhaustive by default; with `sample` set, draws that many colorings
    uniformly at random instead (intended for depth 4 and up, where the
    coloring count is in the millions).
    """
    end_edges = [e for e in t.edges if e[0] < t.leaf_count]

    def counts_of(coloring) -> tuple[int, int, int]:
        counts = [0, 0, 0]
        for e in end_edges:
            counts[coloring[e] - 1] += 1
        return tuple(counts)

    if sample is None:
        return [counts_of(c) for c in tree_colorings(t.n, t.edges, t.center)]
    rng = random.Random(seed)
    order, parent_edge, child_edges = _rooted_internal_order(
        t.n, t.edges, t.center
    )
    triples = []
    for _ in range(sample):
        coloring: dict[tuple[int, int], int] = {}
        for u, kids in zip(order, child_edges):
            up = parent_edge[u]
            free = sorted({1, 2, 3} - ({coloring[up]} if up else set()))
            rng.shuffle(free)
            for e, c in zip(kids, free):
                coloring[e] = c
        triples.append(counts_of(coloring))
    return triples
