"""Exhaustive 2-factor searches over tree leaves.

A candidate graph is the tree T_i plus a 2-regular edge set on its leaves.
The search adds one edge unit at a time: a single leaf edge, or in rotation
mode the full orbit of an edge under the label shift by l/3.  Units are
always chosen at the lowest incomplete leaf, and consecutive choices at the
same leaf must have increasing unit ids, so every 2-factor is generated
exactly once.

Girth floors are enforced incrementally.  Any cycle of the combined graph is
either a leaf cycle, or alternates leaf paths with tree paths whose lengths
are even tree distances >= 2, so a floor of at most 6 reduces to conditions
on leaf paths of up to three edges plus leaf cycle lengths:

    k leaf edges whose endpoints sit at tree distance d close a cycle of
    length k + d, so require k + d >= floor for k in {1, 2, 3}; leaf paths
    of four or more edges and cycles using two or more tree paths are
    always long enough.
"""

from __future__ import annotations

import json
import os
import time
from collections import Counter
from dataclasses import dataclass, field
from multiprocessing import Pool

from histsnark.canon import canonical_form
from histsnark.coloring import TreeCompletionColorer, is_three_edge_colorable
from histsnark.graph import (
    CubicGraph,
    girth,
    is_cyclically_k_connected,
)
from histsnark.trees import TiTree, build_ti, find_ti_hists

SHARD_CHOICES = 2
MAX_UNCONSTRAINED_LEAVES = 24
MAX_ROTATION_LEAVES = 48


@dataclass(frozen=True)
class TwoFactorSearchSpace:
    """What to search: tree depth, mode and filters."""

    depth: int
    rotation: bool = False
    girth_min: int = 3
    target_oc: tuple[int, ...] | None = None
    snark_filter: bool = False

    @property
    def leaf_count(self) -> int:
        return 3 * 2 ** (self.depth - 1)

    @property
    def effective_girth_min(self) -> int:
        # a snark has girth at least 5, so the filter implies the floor
        return max(self.girth_min, 5) if self.snark_filter else self.girth_min

    def validate(self, force: bool) -> None:
        if self.girth_min > 6:
            raise ValueError("girth floors above 6 are not supported")
        limit = (
            MAX_ROTATION_LEAVES if self.rotation else MAX_UNCONSTRAINED_LEAVES
        )
        if self.leaf_count > limit:
            raise ValueError(
                f"{self.leaf_count} leaves exceeds the "
                f"{'rotation' if self.rotation else 'unconstrained'} "
                f"limit of {limit}"
            )
        big = self.leaf_count >= (48 if self.rotation else 24)
        if big and not force:
            raise ValueError(
                f"depth {self.depth} "
                f"{'rotation' if self.rotation else 'unconstrained'} "
                "search is a long run; pass force=True to proceed"
            )
        if self.snark_filter and 1 + 3 * (2**self.depth - 1) > 64:
            raise ValueError("snark filter needs graphs with at most 64 vertices")


@dataclass(frozen=True)
class EnumerationReport:
    """Deterministic search outcome; run-varying data lives in `meta` only."""

    space: TwoFactorSearchSpace
    complete: bool
    labeled_total: int
    classes: tuple[dict, ...]
    class_counts: tuple[tuple[tuple[int, ...], int], ...]
    stats: dict
    units_completed: tuple[str, ...]
    meta: dict = field(compare=False)

    @property
    def class_total(self) -> int:
        return len(self.classes)


def _edge_units(space: TwoFactorSearchSpace, l: int):
    """Edge units in id order: single edges, or shift orbits of three."""
    all_edges = [(a, b) for a in range(l) for b in range(a + 1, l)]
    if not space.rotation:
        return [(e,) for e in all_edges]
    shift = l // 3
    seen = set()
    units = []
    for a, b in all_edges:
        orbit = []
        x, y = a, b
        for _ in range(3):
            orbit.append((min(x, y), max(x, y)))
            x, y = (x + shift) % l, (y + shift) % l
        key = frozenset(orbit)
        if key in seen:
            continue
        seen.add(key)
        if len(key) != 3:
            raise AssertionError("shift orbit of unexpected size")
        units.append(tuple(sorted(orbit)))
    return units


class _Searcher:
    """Single-threaded search core; work units are choice-sequence prefixes."""

    def __init__(self, space: TwoFactorSearchSpace):
        space.validate(force=True)
        self.space = space
        self.tree = build_ti(space.depth)
        self.l = self.tree.leaf_count
        self.dist = self.tree.leaf_distance
        self.units = _edge_units(space, self.l)
        self.units_at = [[] for _ in range(self.l)]
        for uid, unit in enumerate(self.units):
            for v in {x for e in unit for x in e}:
                self.units_at[v].append(uid)
        self.gamma = space.effective_girth_min
        self.colorer = TreeCompletionColorer(self.tree)
        self.partners = [[] for _ in range(self.l)]
        self.target = (
            None if space.target_oc is None else Counter(space.target_oc)
        )
        self.stats = Counter()
        self.accepted: list[tuple] = []
        self.visitor = None
        self.node_budget = None
        self.truncated = False

    # -- incremental edge checks ------------------------------------------

    def _walks_from(self, v: int, avoid: int, steps: int):
        """Endpoints of leaf paths starting v, first step not toward avoid."""
        yield v, 0
        if steps == 0:
            return
        for w in self.partners[v]:
            if w == avoid:
                continue
            yield w, 1
            if steps > 1:
                for x in self.partners[w]:
                    if x != v:
                        yield x, 2

    def _edge_ok(self, a: int, b: int) -> bool:
        """Check every leaf path of <= 3 edges through the new edge ab."""
        if len(self.partners[a]) >= 2 or len(self.partners[b]) >= 2:
            self.stats["pruned_degree"] += 1
            return False
        if b in self.partners[a]:
            self.stats["pruned_degree"] += 1
            return False
        for x, ka in self._walks_from(a, b, 2):
            for y, kb in self._walks_from(b, a, 2 - ka):
                length = 1 + ka + kb
                if length + self.dist[x][y] < self.gamma:
                    self.stats["pruned_girth"] += 1
                    return False
        return True

    def _closes_cycle(self, a: int, b: int) -> int:
        """Length of the cycle the edge ab would close, or 0."""
        if not self.partners[a]:
            return 0
        prev, cur, length = a, self.partners[a][0], 1
        while True:
            length += 1
            if cur == b:
                return length
            nxt = [w for w in self.partners[cur] if w != prev]
            if not nxt:
                return 0
            prev, cur = cur, nxt[0]

    def _try_add_unit(self, uid: int):
        """Apply all edges of a unit; returns undo data or None if pruned."""
        added = []
        closed = []
        for a, b in self.units[uid]:
            if not self._edge_ok(a, b):
                self._undo(added, closed)
                return None
            cycle = self._closes_cycle(a, b)
            if cycle:
                if cycle < self.gamma:
                    self.stats["pruned_girth"] += 1
                    self._undo(added, closed)
                    return None
                if self.target is not None:
                    if self.target[cycle] <= 0:
                        self.stats["pruned_oc"] += 1
                        self._undo(added, closed)
                        return None
                    self.target[cycle] -= 1
                    closed.append(cycle)
            self.partners[a].append(b)
            self.partners[b].append(a)
            added.append((a, b))
        return added, closed

    def _undo(self, added, closed) -> None:
        for a, b in reversed(added):
            self.partners[a].remove(b)
            self.partners[b].remove(a)
        if self.target is not None:
            for cycle in closed:
                self.target[cycle] += 1

    # -- acceptance ---------------------------------------------------------

    def _cycles_of_factor(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * self.l
        cycles = []
        for start in range(self.l):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            prev, cur = start, min(self.partners[start])
            while cur != start:
                cyc.append(cur)
                seen[cur] = True
                nxt = [w for w in self.partners[cur] if w != prev]
                prev, cur = cur, nxt[0]
            cycles.append(tuple(cyc))
        return tuple(cycles)

    def _accept(self) -> None:
        self.stats["accepted_factors"] += 1
        if self.space.snark_filter and self.colorer.colorable(self.partners):
            self.stats["rejected_colorable"] += 1
            return
        cycles = self._cycles_of_factor()
        edges = tuple(
            sorted((min(a, b), max(a, b)) for a in range(self.l)
                   for b in self.partners[a] if a < b)
        )
        g = self._build(edges)
        if self.space.snark_filter:
            if not is_cyclically_k_connected(g, 4):
                self.stats["rejected_cyclic_connectivity"] += 1
                return
            self.stats["snarks_labeled"] += 1
        oc = tuple(sorted((len(c) for c in cycles), reverse=True))
        canon = canonical_form(g).edges
        self.accepted.append((canon, oc, cycles))
        if self.visitor is not None:
            self.visitor(edges, cycles)

    def _build(self, factor_edges) -> CubicGraph:
        return CubicGraph.from_edges(
            self.tree.n, list(self.tree.edges) + list(factor_edges)
        )

    # -- tree walk ----------------------------------------------------------

    def _lowest_incomplete(self) -> int:
        for v in range(self.l):
            if len(self.partners[v]) < 2:
                return v
        return -1

    def _descend(self, last_vertex: int, last_uid: int, prefix, collect_at):
        """Depth-first search; `collect_at` truncates into work-unit prefixes."""
        self.stats["nodes"] += 1
        if self.node_budget is not None and self.stats["nodes"] > self.node_budget:
            self.truncated = True
            return
        v = self._lowest_incomplete()
        if v < 0:
            if self.target is not None and +self.target:
                self.stats["pruned_oc"] += 1
                return
            self._accept()
            return
        if collect_at is not None and len(prefix) == SHARD_CHOICES:
            collect_at.append(tuple(prefix))
            return
        floor = last_uid + 1 if v == last_vertex else 0
        for uid in self.units_at[v]:
            if uid < floor:
                continue
            undo = self._try_add_unit(uid)
            if undo is None:
                continue
            prefix.append(uid)
            self._descend(v, uid, prefix, collect_at)
            prefix.pop()
            self._undo(*undo)
            if self.truncated:
                return

    def collect_units(self) -> list[tuple[int, ...]]:
        """Valid choice prefixes of length SHARD_CHOICES; acceptances that
        happen earlier are recorded directly on this searcher."""
        prefixes: list[tuple[int, ...]] = []
        self._descend(-1, -1, [], prefixes)
        return prefixes

    def run_unit(self, prefix: tuple[int, ...]) -> None:
        """Replay a prefix, then search the subtree below it."""
        undos = []
        last_vertex, last_uid = -1, -1
        ok = True
        for uid in prefix:
            v = self._lowest_incomplete()
            undo = self._try_add_unit(uid)
            if undo is None:
                ok = False
                break
            undos.append(undo)
            last_vertex, last_uid = v, uid
        if ok:
            self._descend(last_vertex, last_uid, list(prefix), None)
        for undo in reversed(undos):
            self._undo(*undo)

    def run_all(self) -> None:
        self._descend(-1, -1, [], None)


def _run_unit_task(args) -> tuple[str, list, dict, bool]:
    space, prefix = args
    searcher = _Searcher(space)
    searcher.run_unit(prefix)
    return (
        _unit_id(prefix),
        searcher.accepted,
        dict(searcher.stats),
        searcher.truncated,
    )


def _unit_id(prefix: tuple[int, ...]) -> str:
    return "-".join(str(u) for u in prefix)


def _merge_accepted(entries) -> dict:
    merged: dict[tuple, dict] = {}
    for canon, oc, cycles in entries:
        slot = merged.setdefault(
            canon, {"count": 0, "ocs": set(), "cycles": None}
        )
        slot["count"] += 1
        slot["ocs"].add(oc)
        if slot["cycles"] is None or cycles < slot["cycles"]:
            slot["cycles"] = cycles
    return merged


def _load_checkpoint(path: str, space: TwoFactorSearchSpace):
    if not path or not os.path.exists(path):
        return set(), [], Counter(), False
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    want = _space_key(space)
    if data.get("space") != want:
        raise ValueError(
            f"checkpoint {path} was written for a different search space"
        )
    accepted = [
        (
            tuple(tuple(e) for e in item[0]),
            tuple(item[1]),
            tuple(tuple(c) for c in item[2]),
        )
        for item in data["accepted"]
    ]
    return (
        set(data["completed_units"]),
        accepted,
        Counter(data["stats"]),
        bool(data.get("truncated", False)),
    )


def _write_checkpoint(path, space, completed, accepted, stats, truncated):
    payload = {
        "accepted": sorted(
            [list(map(list, canon)), list(oc), list(map(list, cycles))]
            for canon, oc, cycles in accepted
        ),
        "completed_units": sorted(completed),
        "space": _space_key(space),
        "stats": dict(sorted(stats.items())),
        "truncated": truncated,
    }
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True)
    os.replace(tmp, path)


def _space_key(space: TwoFactorSearchSpace) -> dict:
    return {
        "depth": space.depth,
        "girth_min": space.girth_min,
        "rotation": space.rotation,
        "snark_filter": space.snark_filter,
        "target_oc": list(space.target_oc) if space.target_oc else None,
    }


def enumerate_two_factors(
    space: TwoFactorSearchSpace,
    visitor=None,
    jobs: int = 1,
    checkpoint: str | None = None,
    node_budget: int | None = None,
    force: bool = False,
) -> EnumerationReport:
    """Visit every 2-factor in the space exactly once and report iso classes.

    Work is split into fixed choice-prefix units (independent of `jobs`, so
    reports are identical for any worker count).  A visitor requires jobs=1
    and is called once per accepted 2-factor in deterministic order.
    """
    space.validate(force)
    if visitor is not None and jobs != 1:
        raise ValueError("a visitor requires jobs=1")
    t0 = time.perf_counter()
    root = _Searcher(space)
    root.visitor = visitor
    root.node_budget = node_budget
    prefixes = root.collect_units()
    accepted = list(root.accepted)
    stats = Counter(root.stats)
    truncated = root.truncated
    done_ids, ck_accepted, ck_stats, ck_trunc = _load_checkpoint(
        checkpoint, space
    )
    accepted.extend(ck_accepted)
    stats.update(ck_stats)
    truncated = truncated or ck_trunc
    todo = [p for p in prefixes if _unit_id(p) not in done_ids]
    completed = set(done_ids)
    persisted_accepted = list(ck_accepted)
    persisted_stats = Counter(ck_stats)
    per_unit_budget = None
    if node_budget is not None and todo:
        per_unit_budget = max(1, node_budget // max(1, len(prefixes)))

    def finish_unit(uid, unit_accepted, unit_stats, unit_trunc):
        nonlocal truncated
        accepted.extend(unit_accepted)
        stats.update(unit_stats)
        truncated = truncated or unit_trunc
        if unit_trunc:
            # a budget-truncated unit stays incomplete so that a resumed
            # run redoes it from scratch
            return
        completed.add(uid)
        persisted_accepted.extend(unit_accepted)
        persisted_stats.update(unit_stats)
        if checkpoint:
            _write_checkpoint(
                checkpoint, space, completed, persisted_accepted,
                persisted_stats, False,
            )

    if jobs <= 1:
        worker = _Searcher(space)
        worker.visitor = visitor
        for prefix in todo:
            worker.accepted = []
            worker.stats = Counter()
            worker.truncated = False
            worker.node_budget = per_unit_budget
            worker.run_unit(prefix)
            finish_unit(
                _unit_id(prefix), worker.accepted, dict(worker.stats),
                worker.truncated,
            )
    else:
        args = [(space, prefix) for prefix in todo]
        with Pool(processes=jobs) as pool:
            for uid, unit_accepted, unit_stats, unit_trunc in pool.imap_unordered(
                _run_unit_task, args
            ):
                finish_unit(uid, unit_accepted, unit_stats, unit_trunc)

    merged = _merge_accepted(accepted)
    classes = []
    for canon in sorted(merged):
        slot = merged[canon]
        entry = {
            "canonical_edges": tuple(canon),
            "count_labeled": slot["count"],
            "cycles": slot["cycles"],
            "ocs": tuple(sorted(slot["ocs"], reverse=True)),
            "oc": tuple(
                sorted((len(c) for c in slot["cycles"]), reverse=True)
            ),
        }
        if space.snark_filter:
            entry["verified"] = _reverify(space.depth, slot["cycles"])
        classes.append(entry)
    counts = Counter()
    for entry in classes:
        for oc in entry["ocs"]:
            counts[oc] += 1
    report = EnumerationReport(
        space=space,
        complete=not truncated,
        labeled_total=stats.get(
            "snarks_labeled" if space.snark_filter else "accepted_factors", 0
        ),
        classes=tuple(classes),
        class_counts=tuple(sorted(counts.items())),
        stats=dict(sorted(stats.items())),
        units_completed=tuple(sorted(completed)),
        meta={
            "wall_time": time.perf_counter() - t0,
            "jobs": jobs,
            "checkpoint": checkpoint,
        },
    )
    return report


def _reverify(depth: int, cycles) -> dict:
    """Independent post-hoc checks on an emitted representative."""
    tree = build_ti(depth)
    edges = list(tree.edges)
    for cycle in cycles:
        for k, a in enumerate(cycle):
            edges.append((a, cycle[(k + 1) % len(cycle)]))
    g = CubicGraph.from_edges(tree.n, edges)
    colorable, _ = is_three_edge_colorable(g)
    return {
        "cubic": True,
        "girth": girth(g),
        "girth_at_least_5": girth(g) >= 5,
        "cyclically_4_connected": is_cyclically_k_connected(g, 4),
        "not_three_edge_colorable": not colorable,
    }


def enumerate_rotation_t4(jobs: int = 1, checkpoint: str | None = None):
    """The full rotation search at depth 4 with the snark filter on."""
    space = TwoFactorSearchSpace(depth=4, rotation=True, snark_filter=True)
    return enumerate_two_factors(space, jobs=jobs, checkpoint=checkpoint)


def classify_by_oc(items, depth: int) -> dict:
    """Group graphs by the oc multiset of their constructing Hist.

    `items` are (graph, oc) pairs.  Each graph is additionally searched for
    every tree-shaped Hist it contains; graphs admitting Hists with more
    than one oc multiset are flagged as potential class overlaps.
    """
    classes: dict[tuple[int, ...], list[int]] = {}
    overlaps = {}
    for idx, (g, oc) in enumerate(items):
        classes.setdefault(tuple(oc), []).append(idx)
        found = sorted({w.oc for w in find_ti_hists(g, depth)})
        if len(found) > 1:
            overlaps[idx] = tuple(found)
    return {
        "classes": {oc: tuple(ids) for oc, ids in sorted(classes.items())},
        "overlaps": overlaps,
    }


def check_girth6_colorability(
    depth: int,
    samples: int | None = None,
    seed: int | None = None,
) -> dict:
    """Check that girth-6 cyclically-4-connected completions are colorable.

    Exhaustive over the whole 2-factor space for depth <= 3 (where it is
    small); for larger depths draws `samples` random 2-factors composed of
    two disjoint perfect matchings, rejection-sampled to girth 6.  Returns
    a report with totals and any counterexamples (expected none).
    """
    if samples is None:
        if depth > 3:
            raise ValueError("exhaustive mode needs depth <= 3")
        return _check_girth6_exhaustive(depth)
    if seed is None:
        raise ValueError("sampled mode needs a seed")
    return _check_girth6_sampled(depth, samples, seed)


def _check_girth6_report(depth: int, mode: str) -> dict:
    return {
        "counterexamples": [],
        "depth": depth,
        "candidates_girth6": 0,
        "kept_cyclically_4_connected": 0,
        "colorable": 0,
        "mode": mode,
        "vacuous": False,
    }


def _check_girth6_exhaustive(depth: int) -> dict:
    report = _check_girth6_report(depth, "exhaustive")
    space = TwoFactorSearchSpace(depth=depth, girth_min=6)
    tree = build_ti(depth)
    # at depth <= 2 no leaf pair sits at tree distance >= 5, so no edge is
    # allowed at all and the candidate set is empty
    if max(max(row) for row in tree.leaf_distance) < 5:
        report["vacuous"] = True
        return report

    def visit(edges, cycles):
        g = CubicGraph.from_edges(
            tree.n, list(tree.edges) + list(edges)
        )
        report["candidates_girth6"] += 1
        if not is_cyclically_k_connected(g, 4):
            return
        report["kept_cyclically_4_connected"] += 1
        colorable, _ = is_three_edge_colorable(g)
        if colorable:
            report["colorable"] += 1
        else:
            report["counterexamples"].append(
                [list(c) for c in cycles]
            )

    enumerate_two_factors(space, visitor=visit, jobs=1)
    report["vacuous"] = report["candidates_girth6"] == 0
    return report


def _girth6_factor_ok(tree: TiTree, partners) -> bool:
    """Leaf-path conditions for girth 6; cycle lengths are checked upstream."""
    dist = tree.leaf_distance
    l = tree.leaf_count
    for a in range(l):
        x, y = partners[a]
        if 2 + dist[x][y] < 6:
            return False
        for b in (x, y):
            if a < b and 1 + dist[a][b] < 6:
                return False
            other = y if b == x else x
            c = [w for w in partners[b] if w != a][0]
            if other != c and 3 + dist[other][c] < 6:
                return False
    return True


def _check_girth6_sampled(depth: int, samples: int, seed: int) -> dict:
    import random

    if depth < 3:
        raise ValueError("no girth-6 completion exists below depth 3")
    report = _check_girth6_report(depth, f"sample({samples})")
    report["seed"] = seed
    tree = build_ti(depth)
    l = tree.leaf_count
    dist = tree.leaf_distance
    rng = random.Random(seed)
    trials = 0
    cap = 100_000 * samples

    def random_matching(forbidden) -> list[tuple[int, int]] | None:
        # pairing a shuffled sequence draws a uniform perfect matching;
        # rejecting bad draws keeps the distribution uniform on survivors
        order = list(range(l))
        rng.shuffle(order)
        pairs = []
        for k in range(0, l, 2):
            a, b = order[k], order[k + 1]
            if dist[a][b] < 5:
                return None
            e = (min(a, b), max(a, b))
            if e in forbidden:
                return None
            pairs.append(e)
        return pairs

    while report["candidates_girth6"] < samples:
        trials += 1
        if trials > cap:
            raise RuntimeError("sampling acceptance rate collapsed")
        m1 = random_matching(frozenset())
        if m1 is None:
            continue
        m2 = random_matching(frozenset(m1))
        if m2 is None:
            continue
        partners = [[] for _ in range(l)]
        for a, b in m1 + m2:
            partners[a].append(b)
            partners[b].append(a)
        # cycle lengths of the union; matching composition gives even cycles
        lengths = []
        seen = [False] * l
        for start in range(l):
            if seen[start]:
                continue
            length, prev, cur = 1, start, partners[start][0]
            seen[start] = True
            while cur != start:
                seen[cur] = True
                length += 1
                nxt = [w for w in partners[cur] if w != prev]
                prev, cur = cur, nxt[0]
            lengths.append(length)
        if min(lengths) < 6:
            continue
        if not _girth6_factor_ok(tree, partners):
            continue
        report["candidates_girth6"] += 1
        edges = [
            (a, b) for a in range(l) for b in partners[a] if a < b
        ]
        g = CubicGraph.from_edges(tree.n, list(tree.edges) + edges)
        if not is_cyclically_k_connected(g, 4):
            continue
        report["kept_cyclically_4_connected"] += 1
        colorable, _ = is_three_edge_colorable(g)
        if colorable:
            report["colorable"] += 1
        else:
            report["counterexamples"].append(
                [[a, b] for a, b in sorted(edges)]
            )
    report["trials"] = trials
    return report
