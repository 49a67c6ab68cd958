"""Measure where a graph sits in the alpha_i hierarchy.

All checks work from the all-pairs distance matrix and are meant for small
graphs (a few hundred vertices at most).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterable

import numpy as np

from .graph import Graph, distance_matrix, load_graph

CLASSIFIER_LIMIT = 300
CHARACTERIZATION_LIMIT = 60


class PatternUnavailable(LookupError):
    """The forbidden-pattern data file is missing from the package."""


@dataclass(frozen=True)
class MetricProfile:
    alpha_index: int
    thinness: int
    disks_convex: bool
    triangle_condition: bool
    alpha1_by_characterization: bool | None = None

    def to_json(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class PatternEmbedding:
    mapping: tuple[int, ...]


def _dist(g: Graph, dist: np.ndarray | None) -> np.ndarray:
    return distance_matrix(g) if dist is None else dist


def alpha_witness(g: Graph, dist: np.ndarray | None = None) -> tuple[int, tuple[int, int, int, int]]:
    """Largest defect over glued geodesics, with one (u, v, w, x) attaining it.

    For an edge vw, u ranges over vertices with d(u, w) = d(u, v) + 1 and x over
    vertices with d(v, x) = d(w, x) + 1.  u = v and x = w always qualify, so
    the result is at least 0.
    """
    D = _dist(g, dist).astype(np.int64)
    best, witness = 0, (0, 0, 0, 0)
    for a, b in g.edges():
        for v, w in ((a, b), (b, a)):
            us = np.flatnonzero(D[:, w] == D[:, v] + 1)
            xs = np.flatnonzero(D[v] == D[w] + 1)
            defect = D[us, v][:, None] + 1 + D[w, xs][None, :] - D[np.ix_(us, xs)]
            k = int(defect.argmax())
            val = int(defect.flat[k])
            if val > best:
                i, j = divmod(k, len(xs))
                best, witness = val, (int(us[i]), v, w, int(xs[j]))
    return best, witness


def alpha_index(g: Graph, dist: np.ndarray | None = None) -> int:
    return alpha_witness(g, dist)[0]


def interval_thinness(g: Graph, dist: np.ndarray | None = None) -> int:
    """Largest distance between two vertices of one slice S_k(u, v)."""
    D = _dist(g, dist)
    best = 0
    for u in range(g.n):
        du = D[u]
        # on[x, v]: x lies on a shortest u-v path
        on = (du[:, None] + D) == du[None, :]
        shared = (on.astype(np.float32) @ on.T.astype(np.float32)) > 0
        same_level = du[:, None] == du[None, :]
        mask = shared & same_level
        if mask.any():
            best = max(best, int(D[mask].max()))
    return best


def disk_convexity_witness(g: Graph, dist: np.ndarray | None = None) -> tuple[int, int, int, int] | None:
    """A triple breaking d(v, z) <= max(d(x, z), d(y, z)) for v in I(x, y), or None.

    Returned as (x, y, v, z).  Disks are all convex exactly when none exists.
    """
    D = _dist(g, dist)
    n = g.n
    for x in range(n):
        dx = D[x]
        # between[v, y]: v in I(x, y)
        between = (dx[:, None] + D) == dx[None, :]
        for v in range(n):
            farther = np.flatnonzero(D[v] > dx)
            if farther.size == 0:
                continue
            ys = np.flatnonzero(between[v])
            bad = D[np.ix_(ys, farther)] < D[v, farther][None, :]
            if bad.any():
                i, j = np.argwhere(bad)[0]
                return x, int(ys[i]), v, int(farther[j])
    return None


def disks_convex(g: Graph, dist: np.ndarray | None = None) -> bool:
    return disk_convexity_witness(g, dist) is None


def dk_convex(g: Graph, members: Iterable[int], k: int, dist: np.ndarray | None = None) -> bool:
    """True when I(x, y) stays inside the set for every member pair at distance >= k."""
    D = _dist(g, dist)
    inside = sorted(set(members))
    if not inside:
        raise ValueError("dk_convex needs a nonempty vertex set")
    mask = np.zeros(g.n, dtype=bool)
    mask[inside] = True
    outside = np.flatnonzero(~mask)
    if outside.size == 0:
        return True
    S = np.asarray(inside)
    Dss = D[np.ix_(S, S)]
    Dso = D[np.ix_(S, outside)]
    for a in range(len(S)):
        far = np.flatnonzero(Dss[a] >= k)
        if far.size == 0:
            continue
        on_path = Dso[a][None, :] + Dso[far] == Dss[a, far][:, None]
        if on_path.any():
            return False
    return True


def triangle_condition(g: Graph, dist: np.ndarray | None = None) -> bool:
    """Every edge uv with an equidistant w (k >= 1) has a common neighbour one step closer to w."""
    D = _dist(g, dist)
    adj = g.adj_sets
    for u, v in g.edges():
        equal = np.flatnonzero((D[u] == D[v]) & (D[u] >= 1))
        if equal.size == 0:
            continue
        common = sorted(adj[u] & adj[v])
        if not common:
            return False
        closest = D[np.ix_(common, equal)].min(axis=0)
        if (closest != D[u, equal] - 1).any():
            return False
    return True


def find_isometric(pattern: Graph, host: Graph, host_dist: np.ndarray | None = None) -> PatternEmbedding | None:
    """Lexicographically first distance-preserving injection of pattern into host."""
    P = distance_matrix(pattern)
    H = _dist(host, host_dist)
    p, n = pattern.n, host.n
    if p > n:
        return None
    span = int(P.max()) + 1
    # per-vertex counts of vertices at each distance, used as a pruning profile
    pat_prof = np.stack([np.bincount(row, minlength=span)[:span] for row in P])
    host_prof = np.stack([np.bincount(np.minimum(row, span), minlength=span + 1)[:span] for row in H])
    allowed = [np.flatnonzero((host_prof >= pat_prof[a][None, :]).all(axis=1)) for a in range(p)]

    mapping: list[int] = []
    used = np.zeros(n, dtype=bool)

    def extend(j: int) -> bool:
        if j == p:
            return True
        cand = allowed[j]
        cand = cand[~used[cand]]
        for a, img in enumerate(mapping):
            cand = cand[H[img, cand] == P[a, j]]
            if cand.size == 0:
                return False
        for c in cand:
            mapping.append(int(c))
            used[c] = True
            if extend(j + 1):
                return True
            used[c] = False
            mapping.pop()
        return False

    return PatternEmbedding(tuple(mapping)) if extend(0) else None


@lru_cache(maxsize=None)
def forbidden_pattern() -> Graph:
    """The 9-vertex forbidden pattern: a 6-wheel plus two vertices on opposite rim edges."""
    try:
        text = resources.files("alphametric").joinpath("data/w6pp.txt").read_text()
    except (FileNotFoundError, OSError) as exc:
        raise PatternUnavailable("pattern file data/w6pp.txt is not installed") from exc
    return load_graph(text)


def alpha1_by_characterization(g: Graph, dist: np.ndarray | None = None) -> bool | None:
    """Convex disks and no isometric copy of the forbidden pattern; None if the pattern is missing."""
    try:
        pattern = forbidden_pattern()
    except PatternUnavailable:
        return None
    D = _dist(g, dist)
    return disks_convex(g, D) and find_isometric(pattern, g, D) is None


def profile(g: Graph, dist: np.ndarray | None = None) -> MetricProfile:
    D = _dist(g, dist)
    char = alpha1_by_characterization(g, D) if g.n <= CHARACTERIZATION_LIMIT else None
    return MetricProfile(
        alpha_index=alpha_index(g, D),
        thinness=interval_thinness(g, D),
        disks_convex=disks_convex(g, D),
        triangle_condition=triangle_condition(g, D),
        alpha1_by_characterization=char,
    )
