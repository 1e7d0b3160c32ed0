"""1,3-trees with a centre, Hist detection and Hist enumeration.

A Hist of a cubic graph is a spanning tree whose degrees are all 1 or 3.
The tree T_i is the unique 1,3-tree with a centre at distance i from every
leaf.  Leaves carry labels 0..l-1 taken in branch order (branch k owns the
contiguous block [k*l/3, (k+1)*l/3)); internal vertices continue l, l+1, ...
in depth-first preorder with the centre first.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from histsnark.graph import CubicGraph

MAX_DEPTH = 6


@dataclass(frozen=True)
class TiTree:
    """The canonical tree T_i (depth = i)."""

    depth: int
    n: int
    leaf_count: int
    center: int
    adj: tuple[tuple[int, ...], ...]
    parent: tuple[int, ...]

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (min(v, p), max(v, p)) for v, p in enumerate(self.parent) if p >= 0
        )

    @property
    def leaves(self) -> range:
        return range(self.leaf_count)

    def branch_of(self, leaf: int) -> int:
        return leaf // (self.leaf_count // 3)

    @cached_property
    def leaf_distance(self) -> tuple[tuple[int, ...], ...]:
        """Pairwise tree distances between leaves (all even)."""
        rows = []
        for a in self.leaves:
            dist = [-1] * self.n
            dist[a] = 0
            q = deque([a])
            while q:
                u = q.popleft()
                for w in self.adj[u]:
                    if dist[w] < 0:
                        dist[w] = dist[u] + 1
                        q.append(w)
            rows.append(tuple(dist[b] for b in self.leaves))
        return tuple(rows)


def build_ti(depth: int) -> TiTree:
    if not 1 <= depth <= MAX_DEPTH:
        raise ValueError(f"depth {depth} outside supported range 1..{MAX_DEPTH}")
    leaf_count = 3 * 2 ** (depth - 1)
    total = 1 + 3 * (2**depth - 1)
    adj: list[list[int]] = [[] for _ in range(total)]
    parent = [-1] * total
    center = leaf_count
    counter = center + 1

    def grow(level: int, lo: int, hi: int) -> int:
        """Subtree owning leaf labels [lo, hi); returns its root label."""
        nonlocal counter
        if level == depth:
            return lo
        v = counter
        counter += 1
        mid = (lo + hi) // 2
        for child in (grow(level + 1, lo, mid), grow(level + 1, mid, hi)):
            adj[v].append(child)
            adj[child].append(v)
            parent[child] = v
        return v

    block = leaf_count // 3
    for k in range(3):
        root = grow(1, k * block, (k + 1) * block)
        adj[center].append(root)
        adj[root].append(center)
        parent[root] = center
    return TiTree(
        depth=depth,
        n=total,
        leaf_count=leaf_count,
        center=center,
        adj=tuple(tuple(sorted(ns)) for ns in adj),
        parent=tuple(parent),
    )


@dataclass(frozen=True)
class HistWitness:
    """One Hist of a cubic graph with its outer-cycle length multiset."""

    tree_edges: tuple[tuple[int, int], ...]
    leaves: tuple[int, ...]
    oc: tuple[int, ...]


@dataclass(frozen=True)
class HistSearchResult:
    witnesses: tuple[HistWitness, ...]
    truncated: bool
    nodes: int


def _hist_leaves(g: CubicGraph, tree_edges) -> list[int]:
    """Leaves of the spanning 1,3-tree, raising if the edge set is not one."""
    edges = {(min(u, v), max(u, v)) for u, v in tree_edges}
    if len(edges) != g.n - 1:
        raise ValueError("a spanning tree needs exactly n-1 edges")
    deg = [0] * g.n
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        if not g.has_edge(u, v):
            raise ValueError(f"{(u, v)} is not an edge of the graph")
        deg[u] += 1
        deg[v] += 1
        ru, rv = find(u), find(v)
        if ru == rv:
            raise ValueError("tree edge set contains a cycle")
        parent[ru] = rv
    if any(d not in (1, 3) for d in deg):
        raise ValueError("spanning tree has a vertex of degree 2")
    return [v for v in range(g.n) if deg[v] == 1]


def oc_of_hist(g: CubicGraph, tree_edges) -> tuple[int, ...]:
    """Multiset of outer-cycle lengths (descending) for a Hist of g.

    The non-tree edges always join leaves and form disjoint cycles covering
    every leaf exactly once.
    """
    leaves = _hist_leaves(g, tree_edges)
    tree = {(min(u, v), max(u, v)) for u, v in tree_edges}
    outer: dict[int, list[int]] = {v: [] for v in leaves}
    for u, v in g.edges:
        if (u, v) in tree:
            continue
        if u not in outer or v not in outer:
            raise ValueError("non-tree edge touches an internal vertex")
        outer[u].append(v)
        outer[v].append(u)
    lengths = []
    seen: set[int] = set()
    for start in leaves:
        if start in seen:
            continue
        length = 0
        prev, cur = -1, start
        while True:
            seen.add(cur)
            length += 1
            nxt = [w for w in outer[cur] if w != prev]
            prev, cur = cur, nxt[0]
            if cur == start:
                break
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def is_ti_hist(g: CubicGraph, tree_edges, depth: int) -> bool:
    """True iff tree_edges is a Hist shaped like T_depth."""
    try:
        leaves = _hist_leaves(g, tree_edges)
    except ValueError:
        return False
    if g.n != 1 + 3 * (2**depth - 1):
        return False
    nbrs: dict[int, list[int]] = {v: [] for v in range(g.n)}
    for u, v in tree_edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    leaf_set = set(leaves)
    for x in range(g.n):
        if x in leaf_set:
            continue
        dist = {x: 0}
        q = deque([x])
        while q:
            u = q.popleft()
            for w in nbrs[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    q.append(w)
        if all(dist[leaf] == depth for leaf in leaves):
            return True
    return False


def find_ti_hists(g: CubicGraph, depth: int) -> list[HistWitness]:
    """All Hists of g shaped like T_depth.

    The candidate tree for a given centre is forced by breadth-first levels,
    so each vertex is checked directly.
    """
    if g.n != 1 + 3 * (2**depth - 1):
        return []
    found = []
    for x in range(g.n):
        wit = _ti_hist_at_center(g, depth, x)
        if wit is not None:
            found.append(wit)
    return found


def _ti_hist_at_center(g: CubicGraph, depth: int, x: int) -> HistWitness | None:
    level = [-1] * g.n
    level[x] = 0
    q = deque([x])
    while q:
        u = q.popleft()
        for w in g.adj[u]:
            if level[w] < 0:
                level[w] = level[u] + 1
                q.append(w)
    if max(level) != depth:
        return None
    tree_edges = []
    for v in range(g.n):
        ups = [w for w in g.adj[v] if level[w] == level[v] - 1]
        downs = [w for w in g.adj[v] if level[w] == level[v] + 1]
        flats = [w for w in g.adj[v] if level[w] == level[v]]
        if level[v] == 0:
            if len(downs) != 3:
                return None
        elif level[v] < depth:
            if len(ups) != 1 or len(downs) != 2:
                return None
        else:
            if len(ups) != 1 or len(flats) != 2:
                return None
        for w in ups:
            tree_edges.append((min(v, w), max(v, w)))
    tree = tuple(sorted(tree_edges))
    leaves = tuple(v for v in range(g.n) if level[v] == depth)
    return HistWitness(tree, leaves, oc_of_hist(g, tree))


def find_hists(
    g: CubicGraph, limit: int = 64, budget: int = 10**8
) -> HistSearchResult:
    """Enumerate Hists by vertex-major include/exclude backtracking.

    Each step decides the edges from a vertex to its smaller neighbours, so
    every edge is decided exactly once and witness edge sets are pairwise
    distinct.  Stops early after `limit` witnesses or `budget` search nodes
    and reports truncation.
    """
    n = g.n
    need_deg3 = (n - 2) // 2
    edges = list(g.edges)
    edge_id = {e: i for i, e in enumerate(edges)}
    up_edges = [[edge_id[(w, v)] for w in g.adj[v] if w < v] for v in range(n)]
    down_count = [sum(1 for w in g.adj[v] if w > v) for v in range(n)]
    # degree of u is final once all edges at u are decided, i.e. after the
    # step of its largest neighbour (or of u itself when all are smaller)
    final_at: list[list[int]] = [[] for _ in range(n)]
    for u in range(n):
        final_at[max(u, g.adj[u][-1])].append(u)
    chosen = [False] * len(edges)
    deg = [0] * n
    witnesses: list[HistWitness] = []
    nodes = 0
    truncated = False
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    def spanning_feasible(next_v: int) -> bool:
        """Included forest plus still-undecided edges must span one component."""
        root = list(range(n))

        def f(x: int) -> int:
            while root[x] != x:
                root[x] = root[root[x]]
                x = root[x]
            return x

        count = n
        for i, (u, v) in enumerate(edges):
            if chosen[i] or v > next_v:
                ru, rv = f(u), f(v)
                if ru != rv:
                    root[ru] = rv
                    count -= 1
        return count == 1

    def place(v: int, included: int, deg3: int) -> bool:
        """Decide the up-edges of vertex v; returns False to abort the search."""
        nonlocal nodes, truncated
        nodes += 1
        if nodes > budget:
            truncated = True
            return False
        if v == n:
            tree = tuple(e for i, e in enumerate(edges) if chosen[i])
            leaves = tuple(u for u in range(n) if deg[u] == 1)
            witnesses.append(HistWitness(tree, leaves, oc_of_hist(g, tree)))
            if len(witnesses) >= limit:
                truncated = True
                return False
            return True
        ups = up_edges[v]
        for mask in range(1 << len(ups)):
            take = [ups[j] for j in range(len(ups)) if mask >> j & 1]
            target = deg[v] + len(take)
            if target > 3 or included + len(take) > n - 1:
                continue
            if target + down_count[v] < 1:
                continue
            applied = []
            trail = []
            ok = True
            for i in take:
                u, w = edges[i]
                if deg[u] >= 3 or deg[w] >= 3:
                    ok = False
                    break
                ru, rw = find(u), find(w)
                if ru == rw:
                    ok = False
                    break
                parent[ru] = rw
                trail.append(ru)
                chosen[i] = True
                deg[u] += 1
                deg[w] += 1
                applied.append(i)
            new_deg3 = deg3 + len({x for i in applied for x in edges[i] if deg[x] == 3})
            if ok:
                ok = new_deg3 <= need_deg3
            if ok:
                ok = all(deg[u] in (1, 3) for u in final_at[v])
            if ok:
                ok = spanning_feasible(v)
            if ok and not place(v + 1, included + len(take), new_deg3):
                ok = False
            for i in reversed(applied):
                u, w = edges[i]
                chosen[i] = False
                deg[u] -= 1
                deg[w] -= 1
            for r in reversed(trail):
                parent[r] = r
            if not ok and truncated:
                return False
        return True

    place(0, 0, 0)
    return HistSearchResult(tuple(witnesses), truncated, nodes)
