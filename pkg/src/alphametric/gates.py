"""Gates and distance-two gates of vertices with respect to a target set.

A gate of v with respect to A is a vertex one step closer to A than v that
lies on a shortest path from v to every nearest member of A.  Gates need not
exist in general; the routines here always return a candidate, and
``verify_gate`` tells whether the candidate really is one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph import BfsCache, Graph


class NotACliqueError(ValueError):
    """compute_d2_gates was given a target set that is not a clique."""


@dataclass(frozen=True)
class GateMap:
    targets: tuple[int, ...]
    dist: list[int]
    candidate: list[int]
    p_value: list[int]

    def projection(self, v: int, row: Sequence[int]) -> list[int]:
        """Nearest targets of v, read off a BFS row from v."""
        return [a for a in self.targets if row[a] == self.dist[v]]


@dataclass(frozen=True)
class D2GateMap:
    clique: tuple[int, ...]
    dist: list[int]
    gate: list[int]
    p_value: list[int]
    kept: dict[int, tuple[int, ...]] = field(repr=False)

    def independent_set(self, v: int) -> tuple[int, ...]:
        """J_K of the distance-two gate of v: neighbours whose K-neighbourhoods tile proj(v, K)."""
        return self.kept[self.gate[v]]


def _target_dist(g: Graph, targets: Sequence[int], cache: BfsCache | None, dist: list[int] | None) -> list[int]:
    if dist is not None:
        return dist
    if cache is not None:
        return cache.multi(targets)
    from .graph import multi_source_dist

    return multi_source_dist(g, targets)


def _by_distance(dist: Sequence[int]) -> list[int]:
    return sorted(range(len(dist)), key=lambda v: (dist[v], v))


def compute_gates(
    g: Graph, targets: Iterable[int], cache: BfsCache | None = None, dist: list[int] | None = None
) -> GateMap:
    """Gate candidates: the deepest-reaching neighbour of A, propagated outwards.

    Each v next to A is its own candidate with p = |N(v) & A|.  Farther vertices
    inherit the candidate of the lower neighbour whose candidate has the largest
    p (smallest neighbour id on ties).
    """
    A = tuple(sorted(set(targets)))
    if not A:
        raise ValueError("gate target set must be nonempty")
    d = _target_dist(g, A, cache, dist)
    in_a = set(A)
    cand = list(range(g.n))
    p = [0] * g.n
    adj = g.adj
    for v in _by_distance(d):
        dv = d[v]
        if dv == 1:
            p[v] = sum(1 for u in adj[v] if u in in_a)
        elif dv >= 2:
            best = -1
            for u in adj[v]:
                if d[u] == dv - 1 and p[cand[u]] > best:
                    best = p[cand[u]]
                    cand[v] = cand[u]
            p[v] = best
    return GateMap(A, d, cand, p)


def verify_gate(g: Graph, gates: GateMap, v: int, row: Sequence[int]) -> bool:
    """True when the candidate of v lies on a shortest path to every nearest target.

    ``row`` must be the BFS row of v.  Members of A are their own gates.
    """
    dv = gates.dist[v]
    if dv == 0:
        return True
    c = gates.candidate[v]
    if row[c] != dv - 1:
        return False
    near = g.adj_sets[c]
    return all(a in near for a in gates.projection(v, row))


def edge_has_triangle_with_earlier(g: Graph, order: Sequence[int]) -> list[bool]:
    """For each vertex in ``order``, whether it is adjacent to some vertex listed before it.

    With ``order`` drawn from N(u), a True flag means the edge to that earlier
    vertex closes a triangle through u.  The intersection always iterates the
    smaller side, which keeps the cost at the usual degree-ordered bound.
    """
    earlier: set[int] = set()
    flags = []
    adj = g.adj_sets
    for x in order:
        nx = adj[x]
        small, big = (earlier, nx) if len(earlier) <= len(nx) else (nx, earlier)
        flags.append(any(y in big for y in small))
        earlier.add(x)
    return flags


def is_clique(g: Graph, vertices: Sequence[int]) -> bool:
    adj = g.adj_sets
    return all(b in adj[a] for i, a in enumerate(vertices) for b in vertices[i + 1 :])


def compute_d2_gates(
    g: Graph, clique: Iterable[int], cache: BfsCache | None = None, dist: list[int] | None = None
) -> D2GateMap:
    """Distance-two gates with respect to a clique K.

    Vertices two steps from K are their own gate.  Their kept set J_K is built
    by scanning neighbours next to K in nonincreasing |N(.) & K| order and
    dropping any neighbour adjacent to an earlier one.
    """
    K = tuple(sorted(set(clique)))
    if not K:
        raise ValueError("clique must be nonempty")
    if not is_clique(g, K):
        raise NotACliqueError(f"vertex set {list(K)} is not a clique")
    d = _target_dist(g, K, cache, dist)
    in_k = set(K)
    adj = g.adj
    gate = list(range(g.n))
    p = [0] * g.n
    kept: dict[int, tuple[int, ...]] = {}
    for v in _by_distance(d):
        dv = d[v]
        if dv == 0:
            continue
        if dv == 1:
            p[v] = sum(1 for u in adj[v] if u in in_k)
            kept[v] = (v,)
        elif dv == 2:
            order = sorted((u for u in adj[v] if d[u] == 1), key=lambda u: (-p[u], u))
            flags = edge_has_triangle_with_earlier(g, order)
            keep = tuple(x for x, hit in zip(order, flags) if not hit)
            kept[v] = keep
            p[v] = sum(p[x] for x in keep)
        else:
            best = -1
            for u in adj[v]:
                if d[u] == dv - 1 and p[u] > best:
                    best = p[u]
                    gate[v] = gate[u]
            p[v] = best
    return D2GateMap(K, d, gate, p, kept)
