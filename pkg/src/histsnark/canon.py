"""Canonical forms, isomorphism tests and automorphism counts for cubic graphs.

Canonical form: equitable-partition refinement (1-dimensional Weisfeiler-Leman
seeded with distance profiles) plus individualization backtracking; the
canonical edge list is the lexicographic minimum over all discrete leaf
labelings.  Verified automorphisms discovered along the way prune candidate
branches that can only repeat already-seen labelings.

The automorphism count is computed by a separate distance-pruned backtracking
count of all adjacency-preserving permutations, which is easy to validate
against a brute-force oracle.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from histsnark.graph import CubicGraph


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical edge list with the relabeling that produced it."""

    edges: tuple[tuple[int, int], ...]
    relabeling: tuple[int, ...]
    aut_order: int


def _distance_matrix(g: CubicGraph) -> list[list[int]]:
    dist = []
    for s in range(g.n):
        row = [-1] * g.n
        row[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for w in g.adj[u]:
                if row[w] < 0:
                    row[w] = row[u] + 1
                    q.append(w)
        dist.append(row)
    return dist


def _refine(g: CubicGraph, cells: list[list[int]]) -> list[list[int]]:
    """Refine to an equitable partition: split cells by neighbour counts per
    cell until stable.  Cell order depends only on invariant keys."""
    while True:
        index = [0] * g.n
        for i, cell in enumerate(cells):
            for v in cell:
                index[v] = i
        split = False
        new_cells: list[list[int]] = []
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            keys: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                key = [0] * len(cells)
                for w in g.adj[v]:
                    key[index[w]] += 1
                keys.setdefault(tuple(key), []).append(v)
            if len(keys) > 1:
                split = True
            for key in sorted(keys):
                new_cells.append(keys[key])
        cells = new_cells
        if not split:
            return cells


def _initial_cells(g: CubicGraph, dist: list[list[int]]) -> list[list[int]]:
    profiles: dict[tuple[int, ...], list[int]] = {}
    for v in range(g.n):
        counts = [0] * g.n
        for d in dist[v]:
            counts[d] += 1
        profiles.setdefault(tuple(counts), []).append(v)
    return _refine(g, [profiles[k] for k in sorted(profiles)])


def _labeling_edges(g: CubicGraph, cells: list[list[int]]) -> tuple:
    perm = [0] * g.n
    for pos, cell in enumerate(cells):
        perm[cell[0]] = pos
    out = []
    for u, v in g.edges:
        a, b = perm[u], perm[v]
        out.append((a, b) if a < b else (b, a))
    out.sort()
    return tuple(out), tuple(perm)


def _is_automorphism(g: CubicGraph, perm: list[int]) -> bool:
    return all(g.has_edge(perm[u], perm[v]) for u, v in g.edges)


def canonical_form(g: CubicGraph) -> CanonicalForm:
    dist = _distance_matrix(g)
    root_cells = _initial_cells(g, dist)
    best: dict[str, tuple | None] = {"edges": None, "perm": None}
    # automorphisms are found as pairs of leaf labelings with equal edge
    # lists; each is verified before being used for pruning
    auts: list[list[int]] = []
    leaf_perms: dict[tuple, tuple[int, ...]] = {}

    def descend(cells: list[list[int]], fixed: list[int]) -> None:
        target = None
        for cell in cells:
            if len(cell) > 1 and (target is None or len(cell) < len(target)):
                target = cell
        if target is None:
            edges, perm = _labeling_edges(g, cells)
            if edges in leaf_perms:
                other = leaf_perms[edges]
                # perm and other send g to the same labeled graph, so
                # composing one with the inverse of the other fixes g
                inv = [0] * g.n
                for v, p in enumerate(perm):
                    inv[p] = v
                candidate = [inv[p] for p in other]
                if _is_automorphism(g, candidate):
                    auts.append(candidate)
                    back = [0] * g.n
                    for v, p in enumerate(candidate):
                        back[p] = v
                    auts.append(back)
            else:
                leaf_perms[edges] = perm
            if best["edges"] is None or edges < best["edges"]:
                best["edges"] = edges
                best["perm"] = perm
            return
        explored: list[int] = []
        for v in target:
            if any(
                a[v] in explored and all(a[u] == u for u in fixed) for a in auts
            ):
                continue
            explored.append(v)
            rest = [u for u in target if u != v]
            branched = []
            for cell in cells:
                if cell is target:
                    branched.append([v])
                    branched.append(rest)
                else:
                    branched.append(cell)
            descend(_refine(g, branched), fixed + [v])

    descend(root_cells, [])
    return CanonicalForm(
        edges=best["edges"],
        relabeling=best["perm"],
        aut_order=automorphism_count(g),
    )


def are_isomorphic(a: CubicGraph, b: CubicGraph) -> bool:
    if a.n != b.n:
        return False
    return canonical_form(a).edges == canonical_form(b).edges


def automorphism_count(g: CubicGraph) -> int:
    """Number of adjacency-preserving permutations, by direct backtracking.

    Candidate images are restricted to the vertex's equitable-partition cell
    and must preserve distances to all previously mapped vertices.
    """
    dist = _distance_matrix(g)
    cells = _initial_cells(g, dist)
    cell_of = [0] * g.n
    for i, cell in enumerate(cells):
        for v in cell:
            cell_of[v] = i
    # start in the smallest cell, then grow along edges so every later
    # vertex is adjacent to a placed one and inherits its distance-1 bound
    start = min(range(g.n), key=lambda v: (len(cells[cell_of[v]]), v))
    order = [start]
    placed = {start}
    while len(order) < g.n:
        frontier = [
            w for u in order for w in g.adj[u] if w not in placed
        ]
        if not frontier:
            frontier = [w for w in range(g.n) if w not in placed]
        nxt = min(frontier, key=lambda w: (len(cells[cell_of[w]]), w))
        order.append(nxt)
        placed.add(nxt)
    image = [-1] * g.n
    taken = [False] * g.n
    count = 0

    def place(k: int) -> None:
        nonlocal count
        if k == g.n:
            count += 1
            return
        v = order[k]
        dv = dist[v]
        for w in cells[cell_of[v]]:
            if taken[w]:
                continue
            dw = dist[w]
            ok = True
            for u in order[:k]:
                if dv[u] != dw[image[u]]:
                    ok = False
                    break
            if ok:
                image[v] = w
                taken[w] = True
                place(k + 1)
                taken[w] = False
                image[v] = -1

    place(0)
    return count
