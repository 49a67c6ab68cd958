"""Sweep-based radius, diameter and eccentricity estimates, plus BFS spanning trees.

Every routine takes an optional ``BfsCache`` so callers can count traversals;
a fresh cache is created when none is given.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Literal

from .graph import BfsCache, Graph, GraphError, canonical_parents, multi_source_dist, path_from_dist

Mode = Literal["linear", "mdp"]
TreeStrategy = Literal["mdp_middle", "sweep_middle", "given_root"]


class NotMutuallyDistantError(ValueError):
    """The pair handed to ecc_lower_bounds is not mutually distant."""


class NotATreeError(GraphError):
    """tree_eccentricities was given a graph with a cycle."""


@dataclass(frozen=True)
class SweepTrace:
    seed: int
    sequence: list[int]
    distances: list[int]
    final_pair: tuple[int, int]

    @property
    def pair_distance(self) -> int:
        return self.distances[-1]

    def to_json(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class RadiusEstimate:
    center: int
    ecc: int
    pair: tuple[int, int]
    pair_distance: int
    mode: str

    def to_json(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class DiameterEstimate:
    vertex: int
    d_lower: int
    pair: tuple[int, int]
    mode: str

    def to_json(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class ApproxEccReport:
    pair: tuple[int, int]
    lower: list[int]
    mode: str
    radius_witness: int
    diameter_witness: int

    def to_json(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class TreeEccentricities:
    ecc: list[int]
    center: list[int]
    radius: int


@dataclass(frozen=True)
class SpanningTree:
    root: int
    parent: list[int]
    tree_ecc: list[int]
    tree_center: list[int]
    tree_radius: int
    strategy: str = field(default="given_root")

    def edges(self) -> list[tuple[int, int]]:
        return sorted((min(v, p), max(v, p)) for v, p in enumerate(self.parent) if v != self.root)

    def to_graph(self) -> Graph:
        return Graph.from_edges(len(self.parent), self.edges())

    def to_json(self) -> dict:
        return asdict(self)


def _cache(g: Graph, cache: BfsCache | None) -> BfsCache:
    return BfsCache(g) if cache is None else cache


def double_sweep(g: Graph, z: int, cache: BfsCache | None = None) -> tuple[int, int]:
    """x = first vertex furthest from z, y = first vertex furthest from x."""
    cache = _cache(g, cache)
    x = cache.furthest(z)[0]
    y = cache.furthest(x)[0]
    return x, y


def mutually_distant_pair(g: Graph, z: int, cache: BfsCache | None = None) -> SweepTrace:
    """Hop to the first furthest vertex until the eccentricity stops growing.

    ``distances[k]`` is the eccentricity of ``sequence[k]``, which is also the
    length of the hop to ``sequence[k + 1]``.  The last two entries are equal.
    """
    cache = _cache(g, cache)
    seq = [cache.furthest(z)[0]]
    dists = [cache.ecc(seq[0])]
    while True:
        nxt = cache.furthest(seq[-1])[0]
        e = cache.ecc(nxt)
        seq.append(nxt)
        dists.append(e)
        if e == dists[-2]:
            break
    p, q = seq[-2], seq[-1]
    return SweepTrace(z, seq, dists, (min(p, q), max(p, q)))


def middle_vertex(g: Graph, x: int, y: int, cache: BfsCache | None = None) -> int:
    """Vertex at index floor(d(x, y) / 2) on the canonical x-y path."""
    cache = _cache(g, cache)
    path = cache.path(x, y)
    return path[(len(path) - 1) // 2]


def approx_radius(g: Graph, mode: Mode = "mdp", cache: BfsCache | None = None) -> RadiusEstimate:
    cache = _cache(g, cache)
    if mode == "linear":
        x, y = double_sweep(g, 0, cache)
    elif mode == "mdp":
        x, y = mutually_distant_pair(g, 0, cache).final_pair
    else:
        raise ValueError(f"unknown mode {mode!r}")
    c = middle_vertex(g, x, y, cache)
    return RadiusEstimate(c, cache.ecc(c), (x, y), cache.dist(x)[y], mode)


def approx_diameter(g: Graph, mode: Mode = "mdp", cache: BfsCache | None = None) -> DiameterEstimate:
    cache = _cache(g, cache)
    if mode == "linear":
        v = cache.furthest(0)[0]
        return DiameterEstimate(v, cache.ecc(v), (0, v), mode)
    if mode == "mdp":
        trace = mutually_distant_pair(g, 0, cache)
        return DiameterEstimate(trace.final_pair[0], trace.pair_distance, trace.final_pair, mode)
    raise ValueError(f"unknown mode {mode!r}")


def ecc_lower_bounds(g: Graph, x: int, y: int, cache: BfsCache | None = None) -> ApproxEccReport:
    """Per-vertex lower bound max(d(x, v), d(y, v)) from a mutually distant pair."""
    cache = _cache(g, cache)
    dx, dy = cache.dist(x), cache.dist(y)
    d = dx[y]
    if max(dx) != d or max(dy) != d:
        raise NotMutuallyDistantError(f"({x}, {y}) at distance {d} but eccentricities are {max(dx)} and {max(dy)}")
    lower = [max(a, b) for a, b in zip(dx, dy)]
    c = path_from_dist(g, dx, y)[d // 2]
    return ApproxEccReport((x, y), lower, "mdp", c, x)


def tree_eccentricities(t: Graph) -> TreeEccentricities:
    """Eccentricities of a tree from its center: e(v) = d(v, center) + radius."""
    if t.m != t.n - 1 or not t.is_connected():
        raise NotATreeError(f"graph with {t.n} vertices and {t.m} edges is not a tree")
    cache = BfsCache(t)
    a = cache.furthest(0)[0]
    b = cache.furthest(a)[0]
    path = path_from_dist(t, cache.dist(a), b)
    diam = len(path) - 1
    center = sorted(path[diam // 2 : (diam + 1) // 2 + 1])
    rad = (diam + 1) // 2
    return TreeEccentricities([d + rad for d in multi_source_dist(t, center)], center, rad)


def bfs_tree(g: Graph, root: int, cache: BfsCache | None = None) -> tuple[Graph, list[int]]:
    cache = _cache(g, cache)
    parent = canonical_parents(g, cache.dist(root), root)
    edges = [(v, p) for v, p in enumerate(parent) if v != root]
    return Graph.from_edges(g.n, edges), parent


def tree_from_root(g: Graph, root: int, strategy: str = "given_root", cache: BfsCache | None = None) -> SpanningTree:
    t, parent = bfs_tree(g, root, cache)
    te = tree_eccentricities(t)
    return SpanningTree(root, parent, te.ecc, te.center, te.radius, strategy)


def build_ecc_tree(
    g: Graph, strategy: TreeStrategy = "mdp_middle", root: int | None = None, cache: BfsCache | None = None
) -> SpanningTree:
    cache = _cache(g, cache)
    if strategy == "mdp_middle":
        root = approx_radius(g, "mdp", cache).center
    elif strategy == "sweep_middle":
        root = approx_radius(g, "linear", cache).center
    elif strategy == "given_root":
        if root is None or not 0 <= root < g.n:
            raise ValueError("given_root needs a valid root vertex")
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return tree_from_root(g, root, strategy, cache)
