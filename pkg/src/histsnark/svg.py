"""Radial SVG drawings of tree-plus-2-factor graphs.

Leaves sit equally spaced on a circle in label order; every internal vertex
sits at a radius proportional to its distance from the centre vertex, at the
angular midpoint of the leaf block below it.  Tree edges are straight lines,
2-factor edges are chords.  Output bytes are deterministic: coordinates use
a fixed two-decimal format and elements are emitted in a fixed order.
"""

from __future__ import annotations

import math

from histsnark.codec import OuterCycleSpec, build_graph
from histsnark.trees import TiTree, build_ti

LEAF_RADIUS = 200.0
MARGIN = 20.0

_STYLE = (
    "circle{fill:#1a1a1a}"
    "line.tree{stroke:#1a1a1a;stroke-width:1.5}"
    "line.outer{stroke:#c0392b;stroke-width:1.2}"
    "text{font:10px sans-serif;fill:#444}"
)


def _fmt(x: float) -> str:
    # normalize -0.00 so coordinates do not depend on rounding direction
    s = f"{x:.2f}"
    return "0.00" if s == "-0.00" else s


def _leaf_blocks(tree: TiTree) -> dict[int, tuple[int, int]]:
    """Half-open leaf label range below each vertex."""
    blocks: dict[int, tuple[int, int]] = {}

    def walk(v: int, parent: int) -> tuple[int, int]:
        kids = [w for w in tree.adj[v] if w != parent and w != v]
        if v < tree.leaf_count:
            blocks[v] = (v, v + 1)
            return blocks[v]
        lo, hi = tree.leaf_count, 0
        for w in kids:
            if w == parent:
                continue
            a, b = walk(w, v)
            lo, hi = min(lo, a), max(hi, b)
        blocks[v] = (lo, hi)
        return blocks[v]

    walk(tree.center, -1)
    return blocks


def _positions(tree: TiTree) -> dict[int, tuple[float, float]]:
    blocks = _leaf_blocks(tree)
    depth_of = {tree.center: 0}
    order = [tree.center]
    for v in order:
        for w in tree.adj[v]:
            if w not in depth_of:
                depth_of[w] = depth_of[v] + 1
                order.append(w)
    pos = {}
    for v in range(tree.n):
        lo, hi = blocks[v]
        angle = 2.0 * math.pi * (lo + hi - 1) / (2.0 * tree.leaf_count)
        angle -= math.pi / 2.0
        radius = LEAF_RADIUS * depth_of[v] / tree.depth
        pos[v] = (radius * math.cos(angle), radius * math.sin(angle))
    return pos


def render_svg(spec: OuterCycleSpec) -> str:
    """Render the graph of an outer-cycle description as an SVG document."""
    depth = spec.depth
    if depth is None:
        raise ValueError(f"{spec.leaf_count} labels fit no tree depth")
    g = build_graph(depth, spec)
    tree = build_ti(depth)
    pos = _positions(tree)
    side = 2.0 * (LEAF_RADIUS + MARGIN)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_fmt(-side / 2)} {_fmt(-side / 2)} '
        f'{_fmt(side)} {_fmt(side)}">',
        f"<style>{_STYLE}</style>",
    ]
    tree_edges = set(tree.edges)
    for u, v in g.edges:
        cls = "tree" if (u, v) in tree_edges else "outer"
        (x1, y1), (x2, y2) = pos[u], pos[v]
        lines.append(
            f'<line class="{cls}" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
            f'x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>'
        )
    for v in range(tree.n):
        x, y = pos[v]
        lines.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3"/>')
    for v in range(tree.leaf_count):
        x, y = pos[v]
        fx, fy = x * 1.06, y * 1.06
        lines.append(
            f'<text x="{_fmt(fx)}" y="{_fmt(fy)}" '
            f'text-anchor="middle">{v}</text>'
        )
    if spec.name:
        lines.append(
            f'<text x="0.00" y="{_fmt(-side / 2 + 14)}" '
            f'text-anchor="middle">{spec.name}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
