"""Local search for central vertices of alpha_1-metric graphs.

The searches only promise exact answers on alpha_1-metric inputs (and the
delta variant additionally needs the triangle condition).  On other graphs
they still terminate and return some vertex, except where a structural
property they rely on is visibly missing; then ``ClassificationViolation``
is raised.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .approx import SpanningTree, approx_radius, tree_from_root
from .gates import GateMap, compute_d2_gates, compute_gates, is_clique
from .graph import BfsCache, Graph

IMPROVED = "improved"
LOCAL_MINIMUM = "local_minimum"
NEAR_CENTER = "at_most_rad_plus_1"


class ClassificationViolation(RuntimeError):
    """The input broke a structural property the requested algorithm depends on."""


@dataclass(frozen=True)
class Outcome:
    kind: str
    vertex: int

    @property
    def improved(self) -> bool:
        return self.kind == IMPROVED


@dataclass
class SearchState:
    iteration: int
    x: int
    ecc: int
    candidate_count: int | None = None
    z: int | None = None
    probes: list[int] = field(default_factory=list)
    f_x: dict[int, int] | None = None
    y1: int | None = None
    y2: int | None = None
    z1: int | None = None
    b1: list[int] | None = None
    b2: list[int] | None = None
    outcome: str = ""

    def to_json(self) -> dict:
        data = asdict(self)
        if self.f_x is not None:
            data["f_x"] = {str(k): v for k, v in sorted(self.f_x.items())}
        return data


@dataclass
class CenterResult:
    vertex: int
    ecc: int
    algorithm: str
    bfs_count: int
    trace: list[SearchState] = field(default_factory=list)

    def to_json(self, with_trace: bool = False) -> dict:
        data = {"vertex": self.vertex, "ecc": self.ecc, "algorithm": self.algorithm, "bfs_count": self.bfs_count}
        if with_trace:
            data["trace"] = [s.to_json() for s in self.trace]
        return data


def _cache(g: Graph, cache: BfsCache | None) -> BfsCache:
    return BfsCache(g) if cache is None else cache


def ball_gates(g: Graph, x: int, cache: BfsCache) -> GateMap:
    """Gate candidates with respect to the closed neighbourhood of x."""
    return compute_gates(g, [x, *g.adj[x]], cache)


def toward_all(g: Graph, x: int, targets: Sequence[int], cache: BfsCache, gates: GateMap | None = None) -> list[int]:
    """Neighbours of x lying on a shortest path to every vertex of ``targets``."""
    dx = cache.dist(x)
    result = set(g.adj[x])
    far = []
    for z in targets:
        if dx[z] == 0:
            return []
        if dx[z] == 1:
            result &= {z}
        else:
            far.append(z)
    if far and result:
        if gates is None:
            gates = ball_gates(g, x, cache)
        for c in sorted({gates.candidate[z] for z in far}):
            result &= g.adj_sets[c]
            if not result:
                break
    return sorted(result)


def descend_rad2(g: Graph, x: int, cache: BfsCache | None = None) -> Outcome:
    """Step to a neighbour of smaller eccentricity, or report e(x) <= rad + 1."""
    cache = _cache(g, cache)
    e = cache.ecc(x)
    if e < 2:
        return Outcome(NEAR_CENTER, x)
    K = toward_all(g, x, cache.furthest(x), cache)
    if K and cache.ecc(K[0]) < e:
        return Outcome(IMPROVED, K[0])
    return Outcome(NEAR_CENTER, x)


def local_min_step(g: Graph, x: int, delta: bool = False, cache: BfsCache | None = None) -> Outcome:
    """Find a neighbour with smaller eccentricity or report that x is a local minimum.

    The improving neighbour is read off projection counts rather than by
    running BFS from each candidate.  ``delta=True`` uses plain gates, which
    is valid when the triangle condition holds.
    """
    cache = _cache(g, cache)
    e = cache.ecc(x)
    if e <= 2:
        if e == 2:
            for y in g.adj[x]:
                if g.degree(y) == g.n - 1:
                    return Outcome(IMPROVED, y)
        return Outcome(LOCAL_MINIMUM, x)
    K = toward_all(g, x, cache.furthest(x), cache)
    if not K:
        return Outcome(LOCAL_MINIMUM, x)
    dK = cache.multi(K)
    if max(dK) >= e:
        return Outcome(LOCAL_MINIMUM, x)
    far = [v for v, d in enumerate(dK) if d == e - 1]
    if not is_clique(g, K):
        # convex disks would force a clique; fall back to direct checks
        for y in K:
            if cache.ecc(y) < e:
                return Outcome(IMPROVED, y)
        return Outcome(LOCAL_MINIMUM, x)
    weight = [0] * g.n
    if delta:
        gm = compute_gates(g, K, dist=dK)
        for v in far:
            weight[gm.candidate[v]] += 1
    else:
        d2 = compute_d2_gates(g, K, dist=dK)
        for v in far:
            for w in d2.independent_set(v):
                weight[w] += 1
    in_k = set(K)
    for y in K:
        if sum(weight[w] for w in g.adj[y] if w not in in_k) == len(far):
            return Outcome(IMPROVED, y)
    return Outcome(LOCAL_MINIMUM, x)


def find_rad_plus_1(g: Graph, cache: BfsCache | None = None) -> CenterResult:
    """Start at the middle of a mutually distant pair and descend while possible."""
    cache = _cache(g, cache)
    x = approx_radius(g, "mdp", cache).center
    while True:
        out = descend_rad2(g, x, cache)
        if not out.improved:
            break
        x = out.vertex
    return CenterResult(x, cache.ecc(x), "rad-plus-1", cache.count)


def low_degree_threshold(m: int) -> int:
    return math.floor(m**0.29)


def find_central_alpha1(g: Graph, cache: BfsCache | None = None) -> CenterResult:
    cache = _cache(g, cache)
    x = find_rad_plus_1(g, cache).vertex
    inside = [True] * g.n
    threshold = low_degree_threshold(g.m)
    trace: list[SearchState] = []

    def done(v: int, state: SearchState, how: str) -> CenterResult:
        state.outcome = how
        return CenterResult(v, cache.ecc(v), "alpha1", cache.count, trace)

    iteration = 0
    while True:
        ex = cache.ecc(x)
        state = SearchState(iteration, x, ex, candidate_count=sum(inside))
        trace.append(state)

        if g.degree(x) <= threshold:
            best, best_e = x, ex
            for w in (x, *g.adj[x]):
                out = local_min_step(g, w, cache=cache)
                if out.improved:
                    y = out.vertex
                    state.probes.append(y)
                    if (cache.ecc(y), y) < (best_e, best):
                        best, best_e = y, cache.ecc(y)
            return done(best, state, "low-degree scan")

        z = cache.furthest(x)[0]
        state.z = z
        dx, dz = cache.dist(x), cache.dist(z)
        inside = [keep and dx[v] <= 5 and dz[v] <= ex - 1 for v, keep in enumerate(inside)]
        members = [v for v, keep in enumerate(inside) if keep]
        if not members:
            return done(x, state, "candidates exhausted")
        y = members[0]
        while True:
            state.probes.append(y)
            ey = cache.ecc(y)
            if ey < ex:
                return done(y, state, "probe improved")
            if ey == ex:
                x = y
                state.outcome = "moved"
                break
            toward = [v for v in toward_all(g, y, cache.furthest(y), cache) if inside[v]]
            if not toward or cache.ecc(toward[0]) >= ey:
                return done(x, state, "probe stalled")
            y = toward[0]
        iteration += 1


def _argmax(values: dict[int, int], among: Sequence[int]) -> int:
    return min(among, key=lambda v: (-values.get(v, 0), v))


def find_central_alpha1_delta(g: Graph, cache: BfsCache | None = None) -> CenterResult:
    """Linear-time central vertex for graphs that also satisfy the triangle condition."""
    cache = _cache(g, cache)
    x = approx_radius(g, "mdp", cache).center
    while True:
        out = local_min_step(g, x, delta=True, cache=cache)
        if not out.improved:
            break
        if cache.ecc(out.vertex) >= cache.ecc(x):
            raise ClassificationViolation(f"neighbour {out.vertex} of {x} was reported as improving but is not")
        x = out.vertex
    state = SearchState(0, x, cache.ecc(x))
    v, how = _delta_core(g, x, cache, state)
    state.outcome = how
    return CenterResult(v, cache.ecc(v), "alpha1-delta", cache.count, [state])


def _better(cache: BfsCache, a: int, b: int) -> int:
    return min((a, b), key=lambda v: (cache.ecc(v), v))


def _delta_core(g: Graph, x: int, cache: BfsCache, state: SearchState) -> tuple[int, str]:
    ex = cache.ecc(x)
    if ex <= 1:
        return x, "universal vertex"
    nbrs = g.adj[x]
    far_x = cache.furthest(x)
    gates = ball_gates(g, x, cache)
    mult: dict[int, int] = {}
    for z in far_x:
        c = gates.candidate[z]
        mult[c] = mult.get(c, 0) + 1
    f = {y: sum(mult.get(c, 0) for c in g.adj[y]) for y in nbrs}
    state.f_x = f

    def probe(y: int) -> tuple[int, str] | None:
        ey = cache.ecc(y)
        if ey > ex:
            return x, "neighbour farther"
        if ey < ex:
            raise ClassificationViolation(f"{x} was taken as a local minimum but neighbour {y} is better")
        out = local_min_step(g, y, delta=True, cache=cache)
        if out.improved:
            return _better(cache, x, out.vertex), "neighbour not a local minimum"
        return None

    y1 = _argmax(f, nbrs)
    state.y1 = y1
    res = probe(y1)
    if res:
        return res
    fx_set, f1 = set(far_x), set(cache.furthest(y1))
    if not f1 <= fx_set:
        return _pair_branch(g, x, x, y1, cache), "incomparable pair"

    z1 = min(f1)
    state.z1 = z1
    second = sorted(set(nbrs) & g.adj_sets[gates.candidate[z1]])
    if not second:
        raise ClassificationViolation(f"no neighbour of {x} lies toward {z1}")
    y2 = _argmax(f, second)
    state.y2 = y2
    res = probe(y2)
    if res:
        return res
    f2 = set(cache.furthest(y2))

    def toward_rest(missing: set[int]) -> list[int]:
        if not missing:
            raise ClassificationViolation(f"furthest sets of {x} and a probe coincide")
        return toward_all(g, x, sorted(missing), cache, gates)

    b1 = toward_rest(fx_set - f1)
    b2 = toward_rest(fx_set - f2)
    state.b1, state.b2 = b1, b2
    in_b2 = set(b2)
    for u in b1:
        for v in g.adj[u]:
            if v in in_b2:
                if max(cache.ecc(u), cache.ecc(v)) > ex:
                    return x, "bridge farther"
                return _pair_branch(g, x, u, v, cache), "bridge pair"
    return x, "no bridge"


def _pair_branch(g: Graph, x: int, u: int, v: int, cache: BfsCache) -> int:
    """Handle two adjacent vertices whose furthest sets are incomparable."""
    ex = cache.ecc(x)
    fu, fv = set(cache.furthest(u)), set(cache.furthest(v))
    if not (fu - fv) or not (fv - fu):
        raise ClassificationViolation(f"furthest sets of {u} and {v} are comparable")
    y, z = min(fu - fv), min(fv - fu)
    dy, dz = cache.dist(y), cache.dist(z)
    dyz = dy[z]
    if dyz >= 2 * ex - 1:
        return x
    k = ex - 1
    if dyz < k:
        raise ClassificationViolation(f"d({y}, {z}) = {dyz} is too short for a slice at {k}")
    layer = [s for s in range(g.n) if dy[s] == k and dy[s] + dz[s] == dyz]
    common = set(g.adj[layer[0]]) | {layer[0]}
    for s in layer[1:]:
        common &= set(g.adj[s]) | {s}
    if not common:
        raise ClassificationViolation(f"slice {layer} between {y} and {z} has no universal vertex")
    w = min(common)
    out = local_min_step(g, w, delta=True, cache=cache)
    return _better(cache, x, out.vertex)


def ecc_tree_alpha1(
    g: Graph, delta: bool = False, root: int | None = None, cache: BfsCache | None = None
) -> SpanningTree:
    """BFS tree rooted at a central vertex found by local search, or at ``root`` if given."""
    cache = _cache(g, cache)
    if root is None:
        finder = find_central_alpha1_delta if delta else find_central_alpha1
        root = finder(g, cache).vertex
        strategy = "alpha1-delta-center" if delta else "alpha1-center"
    else:
        strategy = "given_root"
    return tree_from_root(g, root, strategy, cache)
