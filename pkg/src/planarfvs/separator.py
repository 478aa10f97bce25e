"""Lipton-Tarjan balanced separators and recursive r-decomposition."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .embed import Embedding, NonPlanarWitness, test_and_embed, triangulate
from .graph import GraphError, MultiGraph


class SeparatorError(GraphError):
    pass


@dataclass
class SeparatorResult:
    separator: list[int]
    part_a: set[int]
    part_b: set[int]
    phase: str
    meta: dict = field(default_factory=dict)


def size_bound(n: int) -> int:
    return math.ceil(2 * math.sqrt(2 * n))


def _bfs_levels(g: MultiGraph, root: int) -> tuple[dict[int, int], dict[int, int], list[list[int]]]:
    level = {root: 0}
    parent = {root: root}
    levels = [[root]]
    q = deque([root])
    while q:
        x = q.popleft()
        lx = level[x]
        for y in g.neighbors(x):
            if y not in level:
                level[y] = lx + 1
                parent[y] = x
                if lx + 1 == len(levels):
                    levels.append([])
                levels[lx + 1].append(y)
                q.append(y)
    return level, parent, levels


def _components_without(g: MultiGraph, removed: set[int]) -> list[list[int]]:
    seen = set(removed)
    out = []
    for s in g:
        if s in seen:
            continue
        seen.add(s)
        comp, stack = [s], [s]
        while stack:
            x = stack.pop()
            for y in g.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        out.append(comp)
    return out


def group_components(comps: list[list[int]], limit: float) -> tuple[set[int], set[int]] | None:
    """Split components into two groups each of total size <= limit (largest first)."""
    comps = sorted(comps, key=lambda c: (-len(c), min(c)))
    total = sum(len(c) for c in comps)
    a: set[int] = set()
    b: set[int] = set()
    for c in comps:
        if len(a) < total / 3 and len(a) + len(c) <= limit:
            a.update(c)
        else:
            b.update(c)
    if len(a) > limit or len(b) > limit:
        return None
    return a, b


def find_separator(g: MultiGraph, emb: Embedding | None = None) -> SeparatorResult:
    """2/3-balanced separator of size <= ceil(2*sqrt(2n)) for a connected planar graph.

    Tries a single BFS level, then a pair of levels, then a pair of levels plus a
    fundamental cycle of a triangulated shrunken graph. ``emb`` is accepted for
    API symmetry; the cycle phase embeds the shrunken graph itself.
    """
    n = g.n
    if n < 3:
        raise SeparatorError("separator needs at least 3 vertices")
    # root the BFS at a far vertex: levels become arcs rather than rings
    _, _, sweep = _bfs_levels(g, min(g))
    root = min(sweep[-1])
    level, parent, levels = _bfs_levels(g, root)
    if len(level) != n:
        raise SeparatorError("graph is disconnected")
    limit = 2 * n / 3
    bound = 2 * math.sqrt(2 * n)
    sizes = [len(lv) for lv in levels]
    depth = len(levels) - 1
    prefix = [0]
    for s in sizes:
        prefix.append(prefix[-1] + s)

    def above(l: int) -> int:  # vertices on levels < l
        return prefix[max(l, 0)]

    def below(l: int) -> int:  # vertices on levels > l
        return n - prefix[min(l + 1, depth + 1)]

    # phase 1: one level
    best = None
    for l in range(depth + 1):
        if sizes[l] <= bound and above(l) <= limit and below(l) <= limit:
            if best is None or sizes[l] < sizes[best]:
                best = l
    if best is not None:
        sep = list(levels[best])
        return _finish(g, sep, "P1", {"levels": (best,)})

    # median level: levels <= l1 hold at least n/2 vertices
    l1 = next(l for l in range(depth + 1) if prefix[l + 1] >= n / 2)

    def lsize(l: int) -> int:
        return sizes[l] if 0 <= l <= depth else 0

    l0 = min(range(-1, l1 + 1), key=lambda l: (lsize(l) + 2 * (l1 - l), -l))
    l2 = min(range(l1 + 1, depth + 2), key=lambda l: (lsize(l) + 2 * (l - l1 - 1), l))
    ring = [v for l in (l0, l2) if 0 <= l <= depth for v in levels[l]]
    middle = [v for l in range(l0 + 1, min(l2, depth + 1)) for v in levels[l]]

    if len(middle) <= limit:
        return _finish(g, ring, "P2", {"levels": (l0, l2)})

    cycle = _cycle_phase(g, level, parent, middle, l0, emb)
    sep = ring + [v for v in cycle if v not in set(ring)]
    return _finish(g, sep, "P3", {"levels": (l0, l2), "cycle_len": len(cycle)})


def _prune(g: MultiGraph, sset: set[int], comps: list[list[int]], limit: float) -> tuple[set[int], list[list[int]]]:
    """Move separator vertices that touch at most one component into it."""
    comp_of = {}
    for i, c in enumerate(comps):
        for v in c:
            comp_of[v] = i
    comps = [list(c) for c in comps]
    sset = set(sset)
    queue = deque(sorted(sset))
    while queue:
        s = queue.popleft()
        if s not in sset:
            continue
        touched = {comp_of[u] for u in g.neighbors(s) if u in comp_of}
        if len(touched) > 1:
            continue
        if touched:
            (i,) = touched
            if len(comps[i]) + 1 > limit:
                continue
        else:
            i = len(comps)
            comps.append([])
        sset.discard(s)
        comps[i].append(s)
        comp_of[s] = i
        queue.extend(u for u in g.neighbors(s) if u in sset)
    return sset, [c for c in comps if c]


def _finish(g: MultiGraph, sep: list[int], phase: str, meta: dict) -> SeparatorResult:
    n = g.n
    sset = set(sep)
    comps = _components_without(g, sset)
    pruned, pcomps = _prune(g, sset, comps, 2 * n / 3)
    grouped = group_components(pcomps, 2 * n / 3)
    if grouped is not None:
        sset = pruned
    else:
        grouped = group_components(comps, 2 * n / 3)
    if grouped is None:
        raise SeparatorError(f"phase {phase} produced an unbalanced split")
    a, b = grouped
    meta = dict(meta, size=len(sep), n=n)
    return SeparatorResult(sorted(sset), a, b, phase, meta)


def _cycle_phase(
    g: MultiGraph,
    level: dict[int, int],
    parent: dict[int, int],
    middle: list[int],
    l0: int,
    emb: Embedding | None,
) -> list[int]:
    """Balanced fundamental cycle through the middle levels; returns its real vertices."""
    mset = set(middle)
    contracted = l0 >= 0
    if contracted:
        hub = g.max_id + 1
        tree_parent = {v: (hub if level[v] == l0 + 1 else parent[v]) for v in middle}
        tree_parent[hub] = hub
        troot = hub
    else:
        troot = next(v for v in middle if level[v] == 0)  # the BFS root
        tree_parent = {v: parent[v] for v in middle}
    h = MultiGraph(mset)
    if contracted:
        h.add_vertex(hub)
    for u, v in g.simple_edges():
        if u in mset and v in mset:
            h.add_edge(u, v)
    if contracted:
        for v in middle:
            if level[v] == l0 + 1:
                h.add_edge(hub, v)
    e = test_and_embed(h)
    if isinstance(e, NonPlanarWitness):
        raise SeparatorError("graph is not planar")
    tri = triangulate(e)

    depth = {troot: 0}
    order = [troot]
    children: dict[int, list[int]] = {}
    for v, p in tree_parent.items():
        if v != troot:
            children.setdefault(p, []).append(v)
    for x in order:
        for c in children.get(x, ()):
            depth[c] = depth[x] + 1
            order.append(c)

    weight = {v: 1 for v in h}
    if contracted:
        weight[hub] = 0
    total = sum(weight.values())

    # faces and dual adjacency across non-tree edges
    faces = tri.faces()
    face_of: dict[tuple[int, int], int] = {}
    for i, walk in enumerate(faces):
        k = len(walk)
        for j in range(k):
            face_of[(walk[j], walk[(j + 1) % k])] = i

    def is_tree(u: int, v: int) -> bool:
        return tree_parent.get(u) == v or tree_parent.get(v) == u

    dual: dict[int, list[tuple[int, tuple[int, int]]]] = {i: [] for i in range(len(faces))}
    for (u, v), f in face_of.items():
        if u < v and not is_tree(u, v):
            f2 = face_of[(v, u)]
            dual[f].append((f2, (u, v)))
            dual[f2].append((f, (u, v)))

    # dual spanning tree rooted at face 0: subtree face counts and entry/exit times
    tin, tout = {}, {}
    via: dict[int, tuple[int, int]] = {}
    dparent: dict[int, int] = {}
    clock = 0
    stack = [(0, 0)]
    visit_order = []
    while stack:
        f, state = stack.pop()
        if state == 0:
            tin[f] = clock
            clock += 1
            visit_order.append(f)
            stack.append((f, 1))
            for f2, edge in dual[f]:
                if f2 not in tin and f2 != dparent.get(f):
                    via[f2] = edge
                    dparent[f2] = f
                    stack.append((f2, 0))
        else:
            tout[f] = clock
    sub = {f: 1 for f in visit_order}
    for f in reversed(visit_order):
        if f in dparent:
            sub[dparent[f]] += sub[f]
    hub_face = None
    if contracted:
        hub_face = face_of[(hub, next(iter(tri.ccw_next[hub])))]

    def tree_path(u: int, v: int) -> list[int]:
        pu, pv = [u], [v]
        while depth[u] > depth[v]:
            u = tree_parent[u]
            pu.append(u)
        while depth[v] > depth[u]:
            v = tree_parent[v]
            pv.append(v)
        while u != v:
            u = tree_parent[u]
            v = tree_parent[v]
            pu.append(u)
            pv.append(v)
        return pu + pv[-2::-1]

    best = None
    for f, edge in via.items():
        u, v = edge
        cyc = tree_path(u, v)
        t = sub[f]
        inside = (t - len(cyc) + 2) // 2
        on_cycle_w = sum(weight[x] for x in cyc)
        if contracted and hub not in cyc and tin[f] <= tin[hub_face] < tout[f]:
            inside -= 1
        outside = total - on_cycle_w - inside
        score = (max(inside, outside), len(cyc), edge)
        if best is None or score < best[0]:
            best = (score, cyc)
    if best is None:
        raise SeparatorError("triangulation has no non-tree edge")
    return [v for v in best[1] if v in mset]


# -- recursive decomposition --------------------------------------------------

@dataclass
class DecompNode:
    vertices: frozenset[int]
    separator: list[int] = field(default_factory=list)
    phase: str | None = None
    children: list["DecompNode"] = field(default_factory=list)
    trace: object = None  # per-node kernel trace, optimized PTAS only
    marked: list[int] = field(default_factory=list)

    @property
    def is_leaf(self) -> bool:
        return not self.children and not self.separator

    def walk(self) -> Iterable["DecompNode"]:
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def postorder(self) -> list["DecompNode"]:
        out = []
        stack = [(self, False)]
        while stack:
            node, done = stack.pop()
            if done:
                out.append(node)
                continue
            stack.append((node, True))
            for c in reversed(node.children):
                stack.append((c, False))
        return out


@dataclass
class DecompositionTree:
    root: DecompNode
    r: int
    n: int
    meta: dict = field(default_factory=dict)

    def leaves(self) -> list[DecompNode]:
        return [x for x in self.root.walk() if x.is_leaf]

    def separators(self) -> list[list[int]]:
        """Separators in discovery (pre-)order."""
        return [x.separator for x in self.root.walk() if x.separator]

    @property
    def separator_total(self) -> int:
        return sum(len(s) for s in self.separators())

    @property
    def c2(self) -> float:
        """Measured constant in |S| <= c2 * n / sqrt(r)."""
        return self.separator_total * math.sqrt(self.r) / self.n if self.n else 0.0

    def dump(self) -> str:
        lines = []

        def rec(node: DecompNode, indent: int) -> None:
            tag = "leaf" if node.is_leaf else f"{node.phase} |S|={len(node.separator)}"
            lines.append(f"{'  ' * indent}node: size={len(node.vertices)} {tag}")
            for c in node.children:
                rec(c, indent + 1)

        rec(self.root, 0)
        return "\n".join(lines)


def decompose(g: MultiGraph, r: int) -> DecompositionTree:
    """Remove separators recursively until every piece has at most ``r`` vertices."""
    if r < 3:
        raise ValueError("r must be at least 3")
    root = _decompose(g, frozenset(g), r)
    tree = DecompositionTree(root, r, g.n)
    tree.meta.update(separator_total=tree.separator_total, c2=tree.c2)
    return tree


def _decompose(g: MultiGraph, verts: frozenset[int], r: int) -> DecompNode:
    node = DecompNode(verts)
    if len(verts) <= r:
        return node
    sub = g.subgraph(verts)
    comps = sub.components()
    if len(comps) > 1:
        node.phase = "split"
        node.children = [_decompose(g, frozenset(c), r) for c in sorted(comps, key=min)]
        return node
    res = find_separator(sub)
    node.separator = res.separator
    node.phase = res.phase
    rest = sub.without(res.separator)
    node.children = [_decompose(g, frozenset(c), r) for c in sorted(rest.components(), key=min)]
    return node
