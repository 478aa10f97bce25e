"""Independent reference implementations used only by the tests."""

from __future__ import annotations

import itertools
import random

from planarfvs.graph import MultiGraph


def edge_pairs(g: MultiGraph) -> list[tuple[int, int]]:
    return [(u, v) for _, u, v in g.edges()]


def forest_check(vertices, edges) -> bool:
    """Acyclic iff #edges == #vertices - #components (DFS counting, loops count as edges)."""
    vs = set(vertices)
    adj = {v: [] for v in vs}
    m = 0
    for u, v in edges:
        if u in vs and v in vs:
            m += 1
            adj[u].append(v)
            if u != v:
                adj[v].append(u)
    seen = set()
    comps = 0
    for s in vs:
        if s in seen:
            continue
        comps += 1
        seen.add(s)
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return m == len(vs) - comps


def oracle_acyclic(g: MultiGraph, removed=()) -> bool:
    removed = set(removed)
    return forest_check([v for v in g if v not in removed], edge_pairs(g))


def oracle_opt(g: MultiGraph) -> int:
    vs = sorted(g)
    edges = edge_pairs(g)
    for k in range(len(vs) + 1):
        for cand in itertools.combinations(vs, k):
            c = set(cand)
            if forest_check([v for v in vs if v not in c], edges):
                return k
    return len(vs)


# -- planarity: Demoucron, Malgrange and Pertuiset, per biconnected block -----------

def _blocks(adj: dict[int, set[int]]) -> list[set[tuple[int, int]]]:
    index, low = {}, {}
    stack: list[tuple[int, int]] = []
    out = []
    counter = [0]

    def dfs(v, parent):
        index[v] = low[v] = counter[0]
        counter[0] += 1
        for w in sorted(adj[v]):
            if w not in index:
                stack.append((v, w))
                dfs(w, v)
                low[v] = min(low[v], low[w])
                if low[w] >= index[v]:
                    block = set()
                    while True:
                        e = stack.pop()
                        block.add(e)
                        if e == (v, w):
                            break
                    out.append(block)
            elif w != parent and index[w] < index[v]:
                stack.append((v, w))
                low[v] = min(low[v], index[w])

    for v in sorted(adj):
        if v not in index:
            dfs(v, None)
    return out


def _find_cycle(adj):
    start = min(adj)
    parent = {start: None}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in sorted(adj[x]):
            if y == parent[x]:
                continue
            if y in parent:
                px, py = [x], [y]
                while parent[px[-1]] is not None:
                    px.append(parent[px[-1]])
                while parent[py[-1]] is not None:
                    py.append(parent[py[-1]])
                common = set(px) & set(py)
                a = [v for v in px if v not in common]
                b = [v for v in py if v not in common]
                lca = next(v for v in px if v in common)
                return a + [lca] + b[::-1]
            parent[y] = x
            stack.append(y)
    return None


def _dmp(adj: dict[int, set[int]]) -> bool:
    """DMP on a biconnected simple graph."""
    cyc = _find_cycle(adj)
    if cyc is None:
        return True
    emb_v = set(cyc)
    emb_e = {frozenset((cyc[i], cyc[(i + 1) % len(cyc)])) for i in range(len(cyc))}
    faces = [list(cyc), list(cyc)]
    total = sum(len(a) for a in adj.values()) // 2
    while len(emb_e) < total:
        frags = []
        for u in adj:
            for v in adj[u]:
                if u < v and u in emb_v and v in emb_v and frozenset((u, v)) not in emb_e:
                    frags.append(({u, v}, [u, v]))
        seen = set()
        for s in adj:
            if s in emb_v or s in seen:
                continue
            comp = {s}
            stack = [s]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in emb_v and y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            att = {y for x in comp for y in adj[x] if y in emb_v}
            frags.append((att, comp))
        choice = None
        for att, body in frags:
            ok = [i for i, f in enumerate(faces) if att <= set(f)]
            if not ok:
                return False
            if choice is None or len(ok) == 1:
                choice = (att, body, ok[0])
                if len(ok) == 1:
                    break
        att, body, fi = choice
        if isinstance(body, list):
            path = body
        else:
            # path between two attachments through the fragment body
            a = min(att)
            b_targets = att - {a}
            comp = body
            starts = [x for x in comp if a in adj[x]]
            parent = {x: None for x in starts}
            queue = list(starts)
            end = None
            for x in queue:
                hit = [y for y in adj[x] if y in b_targets]
                if hit:
                    end = (x, min(hit))
                    break
                for y in adj[x]:
                    if y in comp and y not in parent:
                        parent[y] = x
                        queue.append(y)
            x, b = end
            inner = [x]
            while parent[inner[-1]] is not None:
                inner.append(parent[inner[-1]])
            path = [a] + inner[::-1] + [b]
        face = faces[fi]
        a, b = path[0], path[-1]
        i, j = face.index(a), face.index(b)
        k = len(face)
        seg1 = [face[(i + t) % k] for t in range((j - i) % k + 1)]  # a .. b
        seg2 = [face[(j + t) % k] for t in range((i - j) % k + 1)]  # b .. a
        mid = path[1:-1]
        faces[fi] = seg1 + mid[::-1]
        faces.append(seg2 + mid)
        emb_v.update(path)
        for x, y in zip(path, path[1:]):
            emb_e.add(frozenset((x, y)))
    return True


def oracle_planar(g: MultiGraph) -> bool:
    adj: dict[int, set[int]] = {v: set() for v in g}
    for _, u, v in g.edges():
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    n = len(adj)
    m = sum(len(a) for a in adj.values()) // 2
    if n >= 3 and m > 3 * n - 6:
        return False
    for block in _blocks(adj):
        badj: dict[int, set[int]] = {}
        for u, v in block:
            badj.setdefault(u, set()).add(v)
            badj.setdefault(v, set()).add(u)
        if len(badj) >= 5 and not _dmp(badj):
            return False
    return True


# -- random instances -----------------------------------------------------------------

def random_multigraph(rng: random.Random, n_max: int = 12, loops: float = 0.1, doubles: float = 0.2) -> MultiGraph:
    n = rng.randint(1, n_max)
    g = MultiGraph(range(n))
    for _ in range(rng.randint(0, 2 * n + 2)):
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v and rng.random() > loops:
            continue
        g.add_edge(u, v)
        if rng.random() < doubles:
            g.add_edge(u, v)
    return g


def random_planar_multigraph(seed: int, n_max: int = 14) -> MultiGraph:
    """Seeded planar multigraph: random planar base plus a few parallel edges and loops."""
    from planarfvs.generators import gen_random_planar

    rng = random.Random(seed)
    n = rng.randint(3, n_max)
    m = rng.randint(n - 1, 3 * n - 6)
    g = gen_random_planar(n, m, seed)
    pairs = sorted(g.simple_edges())
    for u, v in pairs:
        if rng.random() < 0.12:
            g.add_edge(u, v)
    for v in sorted(g):
        if rng.random() < 0.04:
            g.add_edge(v, v)
    return g
