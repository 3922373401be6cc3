"""Shared test helpers: graph generators and independent brute-force
oracles.  The oracles deliberately take different routes from the library
code they check (vertex deletion + recount, exhaustive cycle enumeration,
Kuratowski subdivision search, k x k minor gcds)."""

from __future__ import annotations

import math
from itertools import combinations

from rgcost.lgraph import LabelledGraph, components


# ---------------------------------------------------------------------------
# random graph generators


def random_graph(rng, n_min=1, n_max=8, p=0.4, label_range=(2, 6)) -> LabelledGraph:
    n = rng.randint(n_min, n_max)
    vertices = [f"v{i}" for i in range(n)]
    edges = []
    for i, j in combinations(range(n), 2):
        if rng.random() < p:
            edges.append((vertices[i], vertices[j], rng.randint(*label_range)))
    return LabelledGraph(vertices, edges)


def random_connected_graph(rng, n_min=1, n_max=12, extra_p=0.2, label_range=(2, 6)) -> LabelledGraph:
    n = rng.randint(n_min, n_max)
    vertices = [f"v{i}" for i in range(n)]
    edges = {}
    for i in range(1, n):
        j = rng.randrange(i)
        edges[(j, i)] = rng.randint(*label_range)
    for i, j in combinations(range(n), 2):
        if (i, j) not in edges and rng.random() < extra_p:
            edges[(i, j)] = rng.randint(*label_range)
    return LabelledGraph(vertices, [(vertices[i], vertices[j], lab)
                                    for (i, j), lab in edges.items()])


def path_graph(labels) -> LabelledGraph:
    n = len(labels) + 1
    vertices = [f"v{i}" for i in range(n)]
    edges = [(vertices[i], vertices[i + 1], labels[i]) for i in range(len(labels))]
    return LabelledGraph(vertices, edges)


def cycle_graph(labels) -> LabelledGraph:
    n = len(labels)
    vertices = [f"v{i}" for i in range(n)]
    edges = [(vertices[i], vertices[(i + 1) % n], labels[i]) for i in range(n)]
    return LabelledGraph(vertices, edges)


def complete_graph(n, label=2) -> LabelledGraph:
    vertices = [f"v{i}" for i in range(n)]
    return LabelledGraph(vertices, [(vertices[i], vertices[j], label)
                                    for i, j in combinations(range(n), 2)])


def random_tree(rng, n_min=1, n_max=12, label_range=(2, 6)) -> LabelledGraph:
    n = rng.randint(n_min, n_max)
    vertices = [f"v{i}" for i in range(n)]
    edges = []
    for i in range(1, n):
        edges.append((vertices[rng.randrange(i)], vertices[i], rng.randint(*label_range)))
    return LabelledGraph(vertices, edges)


def hex_chain(h, rng=None, label_range=(2, 6)) -> LabelledGraph:
    """h fused hexagons in a row: two paths of 2h+1 vertices with rungs at
    every even position.  Planar, girth 6."""
    top = [f"t{i}" for i in range(2 * h + 1)]
    bot = [f"b{i}" for i in range(2 * h + 1)]

    def lab():
        return rng.randint(*label_range) if rng is not None else 2

    edges = []
    for i in range(2 * h):
        edges.append((top[i], top[i + 1], lab()))
        edges.append((bot[i], bot[i + 1], lab()))
    for i in range(0, 2 * h + 1, 2):
        edges.append((top[i], bot[i], lab()))
    return LabelledGraph(top + bot, edges)


# ---------------------------------------------------------------------------
# brute-force graph oracles


def brute_cut_vertices(g: LabelledGraph) -> set[str]:
    """Oracle: delete each vertex and recount components."""
    base = len(components(g))
    out = set()
    for v in g.vertices:
        if g.num_vertices == 1:
            break
        rest = [w for w in g.vertices if w != v]
        if len(components(g.induced(rest))) > base:
            out.add(v)
    return out


def brute_girth(g: LabelledGraph):
    """Oracle: exhaustive simple-cycle search by DFS over index-increasing
    start vertices."""
    n = g.num_vertices
    adj = {i: [g.vertex_index(w) for w in g.neighbors(g.vertices[i])] for i in range(n)}
    best = math.inf

    def extend(start, current, visited, length):
        nonlocal best
        if length + 1 >= best:
            return
        for nxt in adj[current]:
            if nxt == start and length >= 2:
                best = min(best, length + 1)
            elif nxt > start and nxt not in visited:
                visited.add(nxt)
                extend(start, nxt, visited, length + 1)
                visited.discard(nxt)

    for start in range(n):
        extend(start, start, {start}, 0)
    return best


def _simple_paths(adj, src, dst, banned, max_len):
    """All simple src->dst paths avoiding `banned` in the interior; yields
    frozensets of interior vertices."""
    out = []

    def walk(current, visited, interior):
        if len(interior) > max_len:
            return
        for nxt in adj[current]:
            if nxt == dst:
                out.append(frozenset(interior))
            elif nxt not in visited and nxt not in banned and nxt != src:
                visited.add(nxt)
                interior.append(nxt)
                walk(nxt, visited, interior)
                interior.pop()
                visited.discard(nxt)

    walk(src, {src}, [])
    return out


def _has_subdivision(g: LabelledGraph, branch_sets, pattern_edges) -> bool:
    n = g.num_vertices
    adj = {i: [g.vertex_index(w) for w in g.neighbors(g.vertices[i])] for i in range(n)}

    def assign(edge_idx, used, branch):
        if edge_idx == len(pattern_edges):
            return True
        a, b = pattern_edges[edge_idx]
        u, v = branch[a], branch[b]
        banned = (set(branch) - {u, v}) | used
        for interior in _simple_paths(adj, u, v, banned, n):
            if interior & used:
                continue
            if assign(edge_idx + 1, used | interior, branch):
                return True
        return False

    for branch in branch_sets:
        if assign(0, set(), branch):
            return True
    return False


def brute_planar(g: LabelledGraph) -> bool:
    """Oracle: no subdivision of K5 or K3,3 (Kuratowski)."""
    n = g.num_vertices
    verts = list(range(n))
    k5_patterns = [tuple(branch) for branch in combinations(verts, 5)]
    if _has_subdivision(g, k5_patterns, list(combinations(range(5), 2))):
        return False
    k33_edges = [(i, j + 3) for i in range(3) for j in range(3)]
    k33_branches = []
    for six in combinations(verts, 6):
        for left in combinations(range(6), 3):
            if 0 not in left:
                continue  # fix side of vertex six[0] to kill the mirror symmetry
            right = [k for k in range(6) if k not in left]
            k33_branches.append(tuple(six[k] for k in left) + tuple(six[k] for k in right))
    if _has_subdivision(g, k33_branches, k33_edges):
        return False
    return True


# ---------------------------------------------------------------------------
# exact linear algebra oracle


def det_int(matrix) -> int:
    """Fraction-free (Bareiss) integer determinant."""
    m = [list(map(int, row)) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def minors_gcd(matrix, k: int) -> int:
    """Oracle: gcd of all k x k minors (0 when all vanish)."""
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    g = 0
    for rows in combinations(range(nrows), k):
        for cols in combinations(range(ncols), k):
            sub = [[matrix[i][j] for j in cols] for i in rows]
            g = math.gcd(g, abs(det_int(sub)))
    return g


def brute_sl2_order(n: int) -> int:
    """Oracle: count 2x2 matrices over Z/n with determinant 1."""
    count = 0
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    if (a * d - b * c) % n == 1 % n:
                        count += 1
    return count
