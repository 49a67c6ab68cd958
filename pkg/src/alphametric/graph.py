"""Immutable undirected graphs, BFS primitives and the edge-list format.

Vertices are dense integers ``0..n-1``.  Every "pick an arbitrary vertex"
decision elsewhere in the package resolves to the smallest id, and BFS
parents follow the same rule, so all reported witnesses are reproducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

MAX_VERTICES = 1_000_000


class GraphError(ValueError):
    """Base class for malformed graph input."""


class GraphFormatError(GraphError):
    """The edge-list text could not be parsed."""


class LoopError(GraphError):
    """An edge joins a vertex to itself."""


class DuplicateEdgeError(GraphError):
    """The same undirected edge was listed twice."""


class DisconnectedGraphError(GraphError):
    """The graph has more than one connected component."""


@dataclass(frozen=True, eq=False)
class Graph:
    """Connected simple undirected graph in adjacency-array form."""

    n: int
    m: int
    adj: tuple[tuple[int, ...], ...] = field(repr=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], *, check_connected: bool = True) -> "Graph":
        if n < 1 or n > MAX_VERTICES:
            raise GraphFormatError(f"vertex count {n} outside 1..{MAX_VERTICES}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise LoopError(f"loop at vertex {u}")
            if v in nbrs[u]:
                raise DuplicateEdgeError(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
            m += 1
        g = cls(n, m, tuple(tuple(sorted(s)) for s in nbrs))
        if check_connected and not g.is_connected():
            raise DisconnectedGraphError(f"graph with {n} vertices is not connected")
        return g

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj_sets[u]

    @cached_property
    def adj_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adj)

    @cached_property
    def csr(self) -> csr_matrix:
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(a) for a in self.adj])
        indices = np.fromiter((v for a in self.adj for v in a), dtype=np.int32, count=2 * self.m)
        data = np.ones(2 * self.m, dtype=np.int8)
        return csr_matrix((data, indices, indptr), shape=(self.n, self.n))

    def is_connected(self) -> bool:
        seen = bytearray(self.n)
        seen[0] = 1
        stack = [0]
        count = 1
        while stack:
            u = stack.pop()
            for v in self.adj[u]:
                if not seen[v]:
                    seen[v] = 1
                    count += 1
                    stack.append(v)
        return count == self.n

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph (possibly disconnected) plus the new-to-old id map."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u in keep for v in self.adj[u] if u < v and v in index]
        return Graph.from_edges(len(keep), edges, check_connected=False), keep

    def to_text(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{u} {v}" for u, v in self.edges())
        return "\n".join(lines) + "\n"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))


@dataclass(frozen=True)
class DistanceRow:
    source: int
    dist: list[int]
    parent: list[int]

    @property
    def eccentricity(self) -> int:
        return max(self.dist)

    def furthest(self) -> list[int]:
        e = max(self.dist)
        return [v for v, d in enumerate(self.dist) if d == e]


def load_graph(text: str) -> Graph:
    """Parse the ``n m`` header plus ``m`` lines of ``u v`` edge pairs."""
    lines = [ln.split() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphFormatError("empty document")
    header = lines[0]
    if len(header) != 2:
        raise GraphFormatError(f"header must be 'n m', got {' '.join(header)!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError as exc:
        raise GraphFormatError(f"non-integer header {' '.join(header)!r}") from exc
    if m < 0:
        raise GraphFormatError(f"negative edge count {m}")
    body = lines[1:]
    if len(body) != m:
        raise GraphFormatError(f"header declares {m} edges but {len(body)} edge lines follow")
    edges = []
    for lineno, parts in enumerate(body, start=2):
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {' '.join(parts)!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise GraphFormatError(f"line {lineno}: non-integer vertex id") from exc
    return Graph.from_edges(n, edges)


def bfs_dist(g: Graph, source: int) -> list[int]:
    """Hop distances from ``source`` (no parent bookkeeping)."""
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    adj = g.adj
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = du
                queue.append(v)
    return dist


def multi_source_dist(g: Graph, sources: Iterable[int]) -> list[int]:
    """Distance from every vertex to the nearest member of ``sources``."""
    dist = [-1] * g.n
    queue = deque()
    for s in sources:
        if dist[s] < 0:
            dist[s] = 0
            queue.append(s)
    if not queue:
        raise ValueError("multi-source BFS needs at least one source")
    adj = g.adj
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = du
                queue.append(v)
    return dist


def canonical_parents(g: Graph, dist: Sequence[int], source: int) -> list[int]:
    # adjacency lists are sorted, so the first hit is the minimum-id parent
    parent = [source] * g.n
    for v in range(g.n):
        dv = dist[v] - 1
        if dv < 0:
            continue
        for u in g.adj[v]:
            if dist[u] == dv:
                parent[v] = u
                break
    return parent


def bfs(g: Graph, source: int) -> DistanceRow:
    if not 0 <= source < g.n:
        raise IndexError(f"source {source} outside 0..{g.n - 1}")
    dist = bfs_dist(g, source)
    return DistanceRow(source, dist, canonical_parents(g, dist, source))


def path_from_parents(parent: Sequence[int], x: int, y: int) -> list[int]:
    path = [y]
    while path[-1] != x:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def path_from_dist(g: Graph, dist: Sequence[int], y: int) -> list[int]:
    """Walk minimum-id parents from ``y`` down to the BFS source of ``dist``."""
    path = [y]
    v = y
    while dist[v] > 0:
        dv = dist[v] - 1
        v = next(u for u in g.adj[v] if dist[u] == dv)
        path.append(v)
    path.reverse()
    return path


def canonical_path(g: Graph, x: int, y: int) -> list[int]:
    """Shortest x-y path following minimum-id BFS(x) parents back from y."""
    return path_from_dist(g, bfs_dist(g, x), y)


def distance_matrix(g: Graph) -> np.ndarray:
    """All-pairs hop distances as an ``int32`` matrix."""
    d = shortest_path(g.csr, method="D", directed=False, unweighted=True)
    if np.isinf(d).any():
        raise DisconnectedGraphError("graph is not connected")
    return d.astype(np.int32)


def _pair_rows(g: Graph, u: int, v: int, dist: np.ndarray | None) -> tuple[Sequence[int], Sequence[int]]:
    if dist is not None:
        return dist[u], dist[v]
    return bfs_dist(g, u), bfs_dist(g, v)


def interval(g: Graph, u: int, v: int, dist: np.ndarray | None = None) -> set[int]:
    """I(u, v): all vertices on some shortest u-v path."""
    du, dv = _pair_rows(g, u, v, dist)
    d = du[v]
    return {x for x in range(g.n) if du[x] + dv[x] == d}


def slice_(g: Graph, u: int, v: int, k: int, dist: np.ndarray | None = None) -> set[int]:
    """S_k(u, v): interval vertices at distance exactly ``k`` from ``u``."""
    du, dv = _pair_rows(g, u, v, dist)
    d = du[v]
    if not 0 <= k <= d:
        raise ValueError(f"slice index {k} outside 0..{d}")
    return {x for x in range(g.n) if du[x] == k and du[x] + dv[x] == d}


def disk(dist_row: Sequence[int], r: int) -> set[int]:
    return {x for x, d in enumerate(dist_row) if d <= r}


class BfsCache:
    """Memoised BFS rows for one algorithm run, with an invocation counter.

    ``count`` is the number of BFS traversals actually performed (single- or
    multi-source); cached lookups are free.
    """

    def __init__(self, g: Graph):
        self.g = g
        self.count = 0
        self._rows: dict[int, list[int]] = {}

    def dist(self, source: int) -> list[int]:
        row = self._rows.get(source)
        if row is None:
            self.count += 1
            row = bfs_dist(self.g, source)
            self._rows[source] = row
        return row

    def ecc(self, v: int) -> int:
        return max(self.dist(v))

    def furthest(self, v: int) -> list[int]:
        row = self.dist(v)
        e = max(row)
        return [u for u, d in enumerate(row) if d == e]

    def multi(self, sources: Iterable[int]) -> list[int]:
        self.count += 1
        return multi_source_dist(self.g, sources)

    def path(self, x: int, y: int) -> list[int]:
        return path_from_dist(self.g, self.dist(x), y)
