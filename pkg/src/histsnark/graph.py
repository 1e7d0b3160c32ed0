"""Cubic graph core: immutable graph type, girth, connectivity, cyclic edge cuts."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

MAX_VERTICES = 64


@dataclass(frozen=True)
class CubicGraph:
    """Immutable 3-regular simple graph on vertices 0..n-1.

    adj[v] is the sorted triple of neighbours of v.
    """

    n: int
    adj: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if not 4 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside supported range 4..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency table length does not match vertex count")
        for v, nbrs in enumerate(self.adj):
            if len(nbrs) != 3 or len(set(nbrs)) != 3:
                raise ValueError(f"vertex {v} is not 3-regular (simple)")
            if v in nbrs:
                raise ValueError(f"vertex {v} carries a loop")
            if tuple(sorted(nbrs)) != tuple(nbrs):
                raise ValueError(f"neighbours of vertex {v} are not sorted")
            for w in nbrs:
                if not 0 <= w < self.n:
                    raise ValueError(f"vertex {v} lists neighbour {w} out of range")
                if v not in self.adj[w]:
                    raise ValueError(f"edge {v}-{w} is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "CubicGraph":
        nbrs: list[list[int]] = [[] for _ in range(n)]
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"parallel edge {key}")
            seen.add(key)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} out of range")
            nbrs[u].append(v)
            nbrs[v].append(u)
        return cls(n, tuple(tuple(sorted(ns)) for ns in nbrs))  # type: ignore[arg-type]

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((v, w) for v in range(self.n) for w in self.adj[v] if v < w)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def relabel(self, perm: list[int] | tuple[int, ...]) -> "CubicGraph":
        """Image under vertex map v -> perm[v]."""
        return CubicGraph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges])


@dataclass(frozen=True)
class EdgeCut:
    """An edge cut together with the vertex bipartition that induces it."""

    edges: tuple[tuple[int, int], ...]
    side_a: tuple[int, ...]
    side_b: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.edges)


def is_connected(g: CubicGraph) -> bool:
    seen = [False] * g.n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        v = stack.pop()
        for w in g.adj[v]:
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    return count == g.n


def girth(g: CubicGraph) -> int:
    """Length of a shortest cycle, via truncated BFS from every root."""
    best = g.n + 1
    for r in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[r] = 0
        q = deque([r])
        while q:
            u = q.popleft()
            if 2 * dist[u] >= best - 1:
                break
            for w in g.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    q.append(w)
                elif w != parent[u]:
                    c = dist[u] + dist[w] + 1
                    if c < best:
                        best = c
    return best


def shortest_cycle(g: CubicGraph) -> list[int]:
    """Vertices of one shortest cycle, in cycle order.

    Found by deleting each edge in turn and joining its endpoints with a
    shortest path in the remainder.
    """
    target = girth(g)
    best: list[int] | None = None
    for u, v in g.edges:
        if best is not None and len(best) == target:
            break
        path = _shortest_path_avoiding(g, u, v, (u, v))
        if path is not None and (best is None or len(path) < len(best)):
            best = path
    assert best is not None, "cubic graphs always contain a cycle"
    return best


def _shortest_path_avoiding(
    g: CubicGraph, s: int, t: int, skip: tuple[int, int]
) -> list[int] | None:
    prev = [-1] * g.n
    prev[s] = s
    q = deque([s])
    while q:
        u = q.popleft()
        if u == t:
            path = [t]
            while path[-1] != s:
                path.append(prev[path[-1]])
            path.reverse()
            return path
        for w in g.adj[u]:
            if (u, w) == skip or (w, u) == skip:
                continue
            if prev[w] < 0:
                prev[w] = u
                q.append(w)
    return None


def _side_has_cycle(g: CubicGraph, members: list[int] | tuple[int, ...]) -> bool:
    inside = set(members)
    seen: set[int] = set()
    for root in members:
        if root in seen:
            continue
        verts = 0
        half_edges = 0
        stack = [root]
        seen.add(root)
        while stack:
            v = stack.pop()
            verts += 1
            for w in g.adj[v]:
                if w in inside:
                    half_edges += 1
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
        if half_edges // 2 >= verts:
            return True
    return False


def _all_cycles(g: CubicGraph) -> list[list[int]]:
    """Every simple cycle, one ordered representative each, shortest first."""
    found: dict[frozenset[int], list[int]] = {}

    def extend(path: list[int], on_path: set[int]) -> None:
        u = path[-1]
        for w in g.adj[u]:
            if w == path[0] and len(path) >= 3 and path[1] < u:
                found.setdefault(frozenset(path), list(path))
            elif w > path[0] and w not in on_path:
                on_path.add(w)
                path.append(w)
                extend(path, on_path)
                path.pop()
                on_path.remove(w)

    for s in range(g.n):
        extend([s], {s})
    return sorted(found.values(), key=len)


def _separable_shortest_cycle(g: CubicGraph) -> list[int] | None:
    """A shortest cycle whose removal leaves another cycle, or None.

    For n >= 8 a cubic graph's shortest cycle always qualifies (the rest keeps
    more edges than a forest allows); for n <= 6 all cycles are tried.
    """
    cyc = shortest_cycle(g)
    rest = [v for v in range(g.n) if v not in set(cyc)]
    if _side_has_cycle(g, rest):
        return cyc
    for path in _all_cycles(g):
        rest = [v for v in range(g.n) if v not in set(path)]
        if _side_has_cycle(g, rest):
            return path
    return None


def _isolating_cut(g: CubicGraph, cycle_vertices: list[int]) -> EdgeCut:
    inside = set(cycle_vertices)
    cut = tuple(
        sorted((min(u, v), max(u, v)) for u in inside for v in g.adj[u] if v not in inside)
    )
    side_a = tuple(sorted(inside))
    side_b = tuple(v for v in range(g.n) if v not in inside)
    return EdgeCut(cut, side_a, side_b)


class _FlowScratch:
    """Reusable unit-capacity max-flow over the fixed edge set of one graph."""

    def __init__(self, g: CubicGraph):
        self.n = g.n
        self.edges = g.edges
        self.m = len(self.edges)
        self.inc: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
        for idx, (u, v) in enumerate(self.edges):
            self.inc[u].append((2 * idx, v))
            self.inc[v].append((2 * idx + 1, u))
        self.cap = [1] * (2 * self.m)

    def maxflow_capped(self, side: list[int], limit: int) -> int:
        """min(limit, max flow from side-1 vertices to side-2 vertices).

        Unassigned vertices (side 0) are free interior vertices.
        """
        cap = self.cap
        for i in range(2 * self.m):
            cap[i] = 1
        flow = 0
        n = self.n
        prev_arc = [-1] * n
        while flow < limit:
            for i in range(n):
                prev_arc[i] = -1
            q = deque()
            for v in range(n):
                if side[v] == 1:
                    prev_arc[v] = -2
                    q.append(v)
            reached = -1
            while q and reached < 0:
                u = q.popleft()
                for arc, w in self.inc[u]:
                    if cap[arc] and prev_arc[w] == -1:
                        prev_arc[w] = arc
                        if side[w] == 2:
                            reached = w
                            break
                        q.append(w)
            if reached < 0:
                return flow
            v = reached
            while prev_arc[v] != -2:
                arc = prev_arc[v]
                cap[arc] -= 1
                cap[arc ^ 1] += 1
                # step back to the tail of the arc that reached v
                v = self.edges[arc >> 1][0] if (arc & 1) == 0 else self.edges[arc >> 1][1]
            flow += 1
        return flow


def _min_cyclic_cut_upto(g: CubicGraph, bound: int, first_hit: bool = False):
    """Minimum cut of size <= bound with a cycle on both sides, else (None, None).

    Exhausts all vertex bipartitions, anchored at the smallest vertex of the
    side away from 0, pruned by a capped max-flow lower bound.
    """
    if bound < 1:
        return None, None
    flow = _FlowScratch(g)
    n, adj = g.n, g.adj
    best_val = bound + 1
    best_sides: tuple[tuple[int, ...], tuple[int, ...]] | None = None

    def crossing(side: list[int]) -> list[tuple[int, int]]:
        return [
            (u, v)
            for u, v in g.edges
            if (side[u] == 1 and side[v] == 2) or (side[u] == 2 and side[v] == 1)
        ]

    def finish(side: list[int]) -> None:
        nonlocal best_val, best_sides
        cut = crossing(side)
        if len(cut) >= best_val:
            return
        a = [v for v in range(n) if side[v] == 1]
        b = [v for v in range(n) if side[v] == 2]
        if _side_has_cycle(g, a) and _side_has_cycle(g, b):
            best_val = len(cut)
            best_sides = (tuple(a), tuple(b))

    def search(side: list[int]) -> bool:
        """Returns True to abort the whole search (first_hit satisfied)."""
        limit = best_val if not first_hit else bound + 1
        if flow.maxflow_capped(side, limit) >= limit:
            return False
        candidates = [v for v in range(n) if side[v] == 0]
        if not candidates:
            finish(side)
            return first_hit and best_sides is not None
        pick = -1
        pick_score = -1
        for v in candidates:
            score = sum(1 for w in adj[v] if side[w] == 2)
            if score > pick_score:
                pick, pick_score = v, score
        if pick_score == 0:
            # the away side is closed off; the rest must join side 1
            completed = [s if s else 1 for s in side]
            finish(completed)
            return first_hit and best_sides is not None
        for value in (2, 1):
            side[pick] = value
            if search(side):
                return True
            side[pick] = 0
        return False

    for t in range(1, n):
        side = [0] * n
        for v in range(t):
            side[v] = 1
        side[t] = 2
        if search(side):
            break
        if best_val <= 1:
            break
    if best_sides is None:
        return None, None
    a, b = best_sides
    side = [0] * n
    for v in a:
        side[v] = 1
    for v in b:
        side[v] = 2
    cut = tuple(sorted(crossing(side)))
    return best_val, EdgeCut(cut, a, b)


def cyclic_edge_connectivity(g: CubicGraph) -> tuple[Optional[int], Optional[EdgeCut]]:
    """Exact cyclic edge connectivity with a witness cut.

    Returns (None, None) when no edge cut leaves two cycle-bearing components
    (K_4 and K_{3,3} are the only such cubic graphs).
    """
    if not is_connected(g):
        raise ValueError("cyclic edge connectivity requires a connected graph")
    cyc = _separable_shortest_cycle(g)
    if cyc is None:
        return None, None
    isolating = _isolating_cut(g, cyc)
    upper = isolating.size
    val, cut = _min_cyclic_cut_upto(g, upper - 1)
    if val is not None:
        return val, cut
    return upper, isolating


def is_cyclically_k_connected(g: CubicGraph, k: int) -> bool:
    """True iff no cyclic edge cut of size < k exists (no cut at all counts)."""
    if not is_connected(g):
        raise ValueError("cyclic edge connectivity requires a connected graph")
    cyc = _separable_shortest_cycle(g)
    if cyc is None:
        return True
    if _isolating_cut(g, cyc).size < k:
        return False
    val, _ = _min_cyclic_cut_upto(g, k - 1, first_hit=True)
    return val is None
