"""Labelled defining graphs of Artin and Coxeter groups.

A labelled graph is a finite simple graph whose edges carry integer labels
>= 2.  Vertices are kept in declaration order and every algorithm in this
package breaks ties by that order, so downstream certificates and traces
are reproducible byte for byte.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import networkx as nx

NAME_CHARS = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_"


class GraphError(ValueError):
    """Malformed graph input or a violated structural precondition."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def _valid_name(name: str) -> bool:
    return bool(name) and all(c in NAME_CHARS for c in name)


class LabelledGraph:
    """Finite simple graph with ordered vertices and edge labels >= 2.

    Immutable after construction; safe to share between threads.
    """

    def __init__(self, vertices, edges):
        vertices = tuple(vertices)
        if not vertices:
            raise GraphError("graph must have at least one vertex")
        index: dict[str, int] = {}
        for v in vertices:
            if not _valid_name(v):
                raise GraphError(f"invalid vertex name {v!r}")
            if v in index:
                raise GraphError(f"duplicate vertex {v!r}")
            index[v] = len(index)
        labels: dict[tuple[int, int], int] = {}
        for u, v, lab in edges:
            if u not in index:
                raise GraphError(f"undeclared endpoint {u!r}")
            if v not in index:
                raise GraphError(f"undeclared endpoint {v!r}")
            if u == v:
                raise GraphError(f"self-loop at {u!r}")
            if not isinstance(lab, int) or lab < 2:
                raise GraphError(f"label {lab!r} on edge {u!r} {v!r} must be an integer >= 2")
            i, j = sorted((index[u], index[v]))
            if (i, j) in labels:
                raise GraphError(f"duplicate edge {u!r} {v!r}")
            labels[(i, j)] = lab
        self._vertices = vertices
        self._index = index
        self._labels = dict(sorted(labels.items()))
        adj: dict[int, list[int]] = {i: [] for i in range(len(vertices))}
        for (i, j) in self._labels:
            adj[i].append(j)
            adj[j].append(i)
        self._adj = {i: tuple(sorted(ns)) for i, ns in adj.items()}

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    def edges(self) -> tuple[tuple[str, str, int], ...]:
        """Edges as (u, v, label), endpoints and edge list in index order."""
        vs = self._vertices
        return tuple((vs[i], vs[j], lab) for (i, j), lab in self._labels.items())

    @property
    def num_vertices(self) -> int:
        return len(self._vertices)

    @property
    def num_edges(self) -> int:
        return len(self._labels)

    def vertex_index(self, v: str) -> int:
        return self._index[v]

    def has_vertex(self, v: str) -> bool:
        return v in self._index

    def has_edge(self, u: str, v: str) -> bool:
        i, j = self._index[u], self._index[v]
        return (min(i, j), max(i, j)) in self._labels

    def label(self, u: str, v: str) -> int:
        i, j = self._index[u], self._index[v]
        try:
            return self._labels[(min(i, j), max(i, j))]
        except KeyError:
            raise GraphError(f"no edge {u!r} {v!r}") from None

    def neighbors(self, v: str) -> tuple[str, ...]:
        return tuple(self._vertices[i] for i in self._adj[self._index[v]])

    def degree(self, v: str) -> int:
        return len(self._adj[self._index[v]])

    def induced(self, keep) -> "LabelledGraph":
        """Induced subgraph on `keep`, preserving relative vertex order."""
        keep_set = set(keep)
        vs = [v for v in self._vertices if v in keep_set]
        missing = keep_set - set(vs)
        if missing:
            raise GraphError(f"unknown vertices {sorted(missing)!r}")
        es = [(u, v, lab) for u, v, lab in self.edges() if u in keep_set and v in keep_set]
        return LabelledGraph(vs, es)

    def __eq__(self, other):
        if not isinstance(other, LabelledGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._labels == other._labels

    def __hash__(self):
        return hash((self._vertices, tuple(self._labels.items())))

    def __repr__(self):
        return f"LabelledGraph({self.num_vertices} vertices, {self.num_edges} edges)"


@dataclass(frozen=True)
class ReductionOrder:
    """Vertex elimination order in which every vertex has degree <= 2
    among itself and all later vertices (a 2-degeneracy witness)."""

    order: tuple[str, ...]


def parse_graph(text: str) -> LabelledGraph:
    """Parse the line-based graph format.

    Lines are `vertex <name>` or `edge <name1> <name2> <label>`; `#` starts
    a comment.  Vertex declaration order fixes vertex indices; endpoints
    must be declared before the edges that use them.
    """
    vertices: list[str] = []
    declared: set[str] = set()
    edges: list[tuple[str, str, int]] = []
    edge_keys: set[frozenset] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertex":
            if len(parts) != 2:
                raise GraphError("vertex line must be `vertex <name>`", lineno)
            name = parts[1]
            if not _valid_name(name):
                raise GraphError(f"invalid vertex name {name!r}", lineno)
            if name in declared:
                raise GraphError(f"duplicate vertex {name!r}", lineno)
            declared.add(name)
            vertices.append(name)
        elif parts[0] == "edge":
            if len(parts) != 4:
                raise GraphError("edge line must be `edge <name1> <name2> <label>`", lineno)
            u, v, lab_text = parts[1], parts[2], parts[3]
            if u == v:
                raise GraphError(f"self-loop at {u!r}", lineno)
            for endpoint in (u, v):
                if endpoint not in declared:
                    raise GraphError(f"undeclared endpoint {endpoint!r}", lineno)
            try:
                lab = int(lab_text)
            except ValueError:
                raise GraphError(f"malformed label {lab_text!r}", lineno) from None
            if lab < 2:
                raise GraphError(f"label {lab} < 2", lineno)
            key = frozenset((u, v))
            if key in edge_keys:
                raise GraphError(f"duplicate edge {u!r} {v!r}", lineno)
            edge_keys.add(key)
            edges.append((u, v, lab))
        else:
            raise GraphError(f"malformed line {line!r}", lineno)
    if not vertices:
        raise GraphError("graph must declare at least one vertex")
    return LabelledGraph(vertices, edges)


def components(g: LabelledGraph) -> tuple[tuple[str, ...], ...]:
    """Connected components, ordered by smallest vertex index; vertices of
    each block in declaration order."""
    n = g.num_vertices
    seen = [False] * n
    blocks = []
    for start in range(n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        block = []
        while stack:
            i = stack.pop()
            block.append(i)
            for j in g._adj[i]:
                if not seen[j]:
                    seen[j] = True
                    stack.append(j)
        blocks.append(tuple(g.vertices[i] for i in sorted(block)))
    return tuple(blocks)


def cut_vertices(g: LabelledGraph) -> frozenset[str]:
    """Articulation points of a connected graph (DFS lowpoint method)."""
    if len(components(g)) != 1:
        raise GraphError("cut_vertices requires a connected graph")
    n = g.num_vertices
    disc = [-1] * n
    low = [0] * n
    cut: set[int] = set()
    counter = 0

    # Iterative DFS; each stack frame is (vertex, parent, neighbor iterator).
    for root in range(n):
        if disc[root] != -1:
            continue
        root_children = 0
        stack = [(root, -1, iter(g._adj[root]))]
        disc[root] = low[root] = counter
        counter += 1
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = counter
                    counter += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, iter(g._adj[w])))
                    advanced = True
                    break
                elif w != parent:
                    low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    pv = stack[-1][0]
                    low[pv] = min(low[pv], low[v])
                    if pv != root and low[v] >= disc[pv]:
                        cut.add(pv)
        if root_children >= 2:
            cut.add(root)
    return frozenset(g.vertices[i] for i in cut)


def girth(g: LabelledGraph):
    """Length of a shortest cycle, or math.inf for forests.

    For each edge, measures the shortest path between its endpoints in the
    graph with that edge removed; the minimum over edges, plus one, is the
    girth.  Exact, and cheap at the graph sizes this package handles.
    """
    best = math.inf
    n = g.num_vertices
    for (i, j) in g._labels:
        # BFS from i to j avoiding edge (i, j).
        dist = {i: 0}
        queue = [i]
        while queue:
            nxt = []
            for a in queue:
                for b in g._adj[a]:
                    if (min(a, b), max(a, b)) == (i, j):
                        continue
                    if b not in dist:
                        dist[b] = dist[a] + 1
                        nxt.append(b)
            queue = nxt
            if j in dist:
                break
        if j in dist:
            best = min(best, dist[j] + 1)
            if best == 3:
                return 3
    return best


def is_planar(g: LabelledGraph) -> bool:
    """Planarity via the DFS-based left-right criterion."""
    G = nx.Graph()
    G.add_nodes_from(range(g.num_vertices))
    G.add_edges_from(g._labels.keys())
    ok, _ = nx.check_planarity(G)
    return ok


def reduction_order(g: LabelledGraph):
    """Greedy 2-degeneracy elimination.

    Repeatedly removes the smallest-index vertex of current degree <= 2.
    Returns a full ReductionOrder on success; on failure returns the
    induced subgraph in which every vertex has degree >= 3 (the witness).
    """
    n = g.num_vertices
    alive = [True] * n
    deg = [len(g._adj[i]) for i in range(n)]
    order = []
    for _ in range(n):
        pick = -1
        for i in range(n):
            if alive[i] and deg[i] <= 2:
                pick = i
                break
        if pick == -1:
            return g.induced([g.vertices[i] for i in range(n) if alive[i]])
        alive[pick] = False
        order.append(g.vertices[pick])
        for j in g._adj[pick]:
            if alive[j]:
                deg[j] -= 1
    return ReductionOrder(tuple(order))


def check_reduction_order(g: LabelledGraph, ro: ReductionOrder) -> bool:
    """Replay an elimination order and confirm the degree <= 2 condition."""
    if sorted(ro.order) != sorted(g.vertices):
        return False
    remaining = set(g.vertices)
    for v in ro.order:
        d = sum(1 for w in g.neighbors(v) if w in remaining)
        if d > 2:
            return False
        remaining.discard(v)
    return True
