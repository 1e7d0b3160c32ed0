"""Outer-cycle notation, graph assembly from trees, and graph6 export.

A graph built on the tree T_i is written as bracket groups listing each
outer cycle's leaf labels in cyclic order, optionally prefixed with a name:
"H(12,12):=[0,21,...][10,23,...]".  The labels across all groups partition
{0..l-1} where l is the leaf count, which also determines the tree depth.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from histsnark.graph import CubicGraph
from histsnark.trees import MAX_DEPTH, build_ti, find_ti_hists


@dataclass(frozen=True)
class OuterCycleSpec:
    """Outer cycles on tree leaves, in cyclic order per cycle."""

    cycles: tuple[tuple[int, ...], ...]
    name: str | None = None

    @cached_property
    def leaf_count(self) -> int:
        return sum(len(c) for c in self.cycles)

    @cached_property
    def depth(self) -> int | None:
        """Tree depth implied by the leaf count, or None if no depth fits."""
        for i in range(1, MAX_DEPTH + 1):
            if self.leaf_count == 3 * 2 ** (i - 1):
                return i
        return None

    @property
    def oc(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles), reverse=True))


def parse_outer_cycles(text: str) -> OuterCycleSpec:
    """Parse one outer-cycle line: optional name prefix, then bracket groups.

    Accepts both "NAME:=" and "NAME =" prefixes and arbitrary spacing.
    Errors carry the character position they were detected at.
    """
    first = text.find("[")
    if first < 0:
        raise ValueError("no bracket group found")
    prefix = text[:first].rstrip()
    name = None
    if prefix:
        if prefix.endswith(":="):
            name = prefix[:-2].strip()
        elif prefix.endswith("="):
            name = prefix[:-1].strip()
        else:
            raise ValueError(
                f"expected ':=' or '=' before position {first}, got {prefix!r}"
            )
        if not name:
            raise ValueError("empty name before '='")
    cycles: list[tuple[int, ...]] = []
    positions: list[list[int]] = []
    pos = first
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch != "[":
            raise ValueError(f"unexpected {ch!r} at position {pos}")
        close = text.find("]", pos)
        if close < 0:
            raise ValueError(f"unclosed '[' at position {pos}")
        body = text[pos + 1 : close]
        labels = []
        label_pos = []
        offset = pos + 1
        for token in body.split(","):
            stripped = token.strip()
            at = offset + token.index(stripped) if stripped else offset
            if not stripped.isdigit():
                raise ValueError(f"expected a label at position {at}")
            labels.append(int(stripped))
            label_pos.append(at)
            offset += len(token) + 1
        if len(labels) < 3:
            raise ValueError(
                f"cycle at position {pos} has length {len(labels)}, need >= 3"
            )
        cycles.append(tuple(labels))
        positions.append(label_pos)
        pos = close + 1
    total = sum(len(c) for c in cycles)
    seen: dict[int, int] = {}
    for cycle, cycle_pos in zip(cycles, positions):
        for label, at in zip(cycle, cycle_pos):
            if label in seen:
                raise ValueError(
                    f"duplicate label {label} at position {at} "
                    f"(first seen at position {seen[label]})"
                )
            seen[label] = at
            if label >= total:
                raise ValueError(
                    f"label {label} at position {at} out of range 0..{total - 1}"
                )
    return OuterCycleSpec(cycles=tuple(cycles), name=name)


def build_graph(depth: int, spec: OuterCycleSpec) -> CubicGraph:
    """Assemble the cubic graph: edges of T_depth plus the outer cycles."""
    t = build_ti(depth)
    if spec.leaf_count != t.leaf_count:
        raise ValueError(
            f"spec has {spec.leaf_count} leaf labels, "
            f"tree of depth {depth} has {t.leaf_count} leaves"
        )
    edges = list(t.edges)
    for cycle in spec.cycles:
        for k, a in enumerate(cycle):
            edges.append((a, cycle[(k + 1) % len(cycle)]))
    return CubicGraph.from_edges(t.n, edges)


def check_rotation_property(spec: OuterCycleSpec) -> bool:
    """True iff the leaf-leaf edge set is invariant under the l/3 label shift."""
    l = spec.leaf_count
    if l % 3:
        raise ValueError(f"leaf count {l} not divisible by 3")
    shift = l // 3
    edge_set = set()
    for cycle in spec.cycles:
        for k, a in enumerate(cycle):
            b = cycle[(k + 1) % len(cycle)]
            edge_set.add((min(a, b), max(a, b)))
    for a, b in edge_set:
        sa, sb = (a + shift) % l, (b + shift) % l
        if (min(sa, sb), max(sa, sb)) not in edge_set:
            return False
    return True


def canonical_cycles(spec: OuterCycleSpec) -> tuple[tuple[int, ...], ...]:
    """Rotate each cycle to start at its smallest label, directed toward the
    smaller of that label's two neighbours; order cycles by first label."""
    out = []
    for cycle in spec.cycles:
        k = cycle.index(min(cycle))
        rotated = cycle[k:] + cycle[:k]
        if len(rotated) > 2 and rotated[-1] < rotated[1]:
            rotated = rotated[:1] + rotated[1:][::-1]
        out.append(rotated)
    return tuple(sorted(out, key=lambda c: c[0]))


def emit_outer_cycles(spec: OuterCycleSpec) -> str:
    body = "".join(
        "[" + ",".join(str(x) for x in cycle) + "]"
        for cycle in canonical_cycles(spec)
    )
    if spec.name:
        return f"{spec.name}:={body}"
    return body


def graph_record(spec: OuterCycleSpec, provenance: str) -> dict:
    """JSON-ready record for a named outer-cycle spec at its implied depth."""
    if spec.depth is None:
        raise ValueError(f"leaf count {spec.leaf_count} fits no tree depth")
    g = build_graph(spec.depth, spec)
    return {
        "name": spec.name,
        "depth": spec.depth,
        "cycles": [list(c) for c in canonical_cycles(spec)],
        "n": g.n,
        "edges": [list(e) for e in g.edges],
        "provenance": provenance,
    }


def export_graph6(g: CubicGraph) -> str:
    """Standard graph6 encoding, defined for n <= 62."""
    if g.n > 62:
        raise ValueError("graph6 single-byte order only covers n <= 62")
    bits = []
    for v in range(1, g.n):
        for u in range(v):
            bits.append(1 if g.has_edge(u, v) else 0)
    while len(bits) % 6:
        bits.append(0)
    chars = [chr(63 + g.n)]
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k : k + 6]:
            value = value << 1 | b
        chars.append(chr(63 + value))
    return "".join(chars)


def import_graph6(text: str) -> CubicGraph:
    """Decode a graph6 string; the result must be cubic."""
    data = [ord(c) - 63 for c in text.strip()]
    if not data or not 0 <= data[0] <= 62:
        raise ValueError("unsupported graph6 header")
    n = data[0]
    bits = []
    for value in data[1:]:
        if not 0 <= value < 64:
            raise ValueError("byte out of graph6 range")
        bits.extend(value >> k & 1 for k in range(5, -1, -1))
    need = n * (n - 1) // 2
    if len(bits) < need or any(bits[need:]):
        raise ValueError("truncated or overlong graph6 body")
    edges = []
    k = 0
    for v in range(1, n):
        for u in range(v):
            if bits[k]:
                edges.append((u, v))
            k += 1
    return CubicGraph.from_edges(n, edges)


def spec_from_graph(g: CubicGraph, name: str | None = None) -> OuterCycleSpec | None:
    """Recover an outer-cycle description of a graph that contains a tree
    Hist, or None if no depth fits or no such Hist exists."""
    for depth in range(1, MAX_DEPTH + 1):
        if g.n != 1 + 3 * (2**depth - 1):
            continue
        witnesses = find_ti_hists(g, depth)
        if witnesses:
            return _spec_from_witness(g, depth, witnesses[0], name)
    return None


def _spec_from_witness(g, depth, witness, name) -> OuterCycleSpec:
    tree_adj: dict[int, list[int]] = {}
    for u, v in witness.tree_edges:
        tree_adj.setdefault(u, []).append(v)
        tree_adj.setdefault(v, []).append(u)

    def farthest(src):
        dist = {src: 0}
        queue = [src]
        for u in queue:
            for w in tree_adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        end = max(dist, key=lambda v: (dist[v], -v))
        return end, dist

    # the centre is the midpoint of any tree diameter path
    end_a, _ = farthest(witness.leaves[0])
    end_b, dist_a = farthest(end_a)
    _, dist_b = farthest(end_b)
    center = next(
        v for v in tree_adj
        if dist_a[v] == depth and dist_b[v] == depth
    )
    leaf_count = 3 * 2 ** (depth - 1)
    mapping = {center: leaf_count}
    counter = leaf_count + 1

    def assign(orig, parent, level, lo, hi):
        nonlocal counter
        if level == depth:
            mapping[orig] = lo
            return
        mapping[orig] = counter
        counter += 1
        kids = sorted(w for w in tree_adj[orig] if w != parent)
        mid = (lo + hi) // 2
        assign(kids[0], orig, level + 1, lo, mid)
        assign(kids[1], orig, level + 1, mid, hi)

    block = leaf_count // 3
    for k, child in enumerate(sorted(tree_adj[center])):
        if depth == 1:
            mapping[child] = k
        else:
            assign(child, center, 1, k * block, (k + 1) * block)

    tree_set = {tuple(sorted(e)) for e in witness.tree_edges}
    partners: dict[int, list[int]] = {}
    for u, v in g.edges:
        if (u, v) in tree_set:
            continue
        a, b = mapping[u], mapping[v]
        partners.setdefault(a, []).append(b)
        partners.setdefault(b, []).append(a)
    seen = set()
    cycles = []
    for start in range(leaf_count):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        prev, cur = start, min(partners[start])
        while cur != start:
            cyc.append(cur)
            seen.add(cur)
            nxt = [w for w in partners[cur] if w != prev]
            prev, cur = cur, nxt[0]
        cycles.append(tuple(cyc))
    return OuterCycleSpec(cycles=tuple(cycles), name=name)
