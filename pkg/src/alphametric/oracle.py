"""Brute-force ground truth: exact eccentricities, centers and localities.

Everything here runs off the all-pairs distance matrix, so it costs O(nm)
time and O(n^2) memory.  Suites keep n at or below ``ORACLE_LIMIT``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np

from .graph import Graph, bfs_dist, distance_matrix

ORACLE_LIMIT = 3000


@dataclass(frozen=True)
class EccReport:
    ecc: list[int]
    radius: int
    diameter: int
    center: list[int]
    mode: str = "exact"

    def to_json(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class CenterInfo:
    center: list[int]
    diam_of_center: int
    diam_of_center_induced: int
    rad_of_center: int
    center_connected: bool
    level_sets: list[list[int]]
    eps_flag: int

    def to_json(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class FurthestSet:
    v: int
    members: list[int]


class Locality(NamedTuple):
    value: int
    is_central: bool


def report_from_ecc(ecc: np.ndarray | list[int], mode: str = "exact") -> EccReport:
    ecc = [int(e) for e in ecc]
    rad, diam = min(ecc), max(ecc)
    return EccReport(ecc, rad, diam, [v for v, e in enumerate(ecc) if e == rad], mode)


def exact_eccentricities(g: Graph, dist: np.ndarray | None = None) -> EccReport:
    if dist is None:
        dist = distance_matrix(g)
    return report_from_ecc(dist.max(axis=1))


def _radius_and_diameter(sub: Graph) -> tuple[int, int, bool]:
    """Radius (max over components) and diameter of a possibly disconnected graph."""
    from scipy.sparse.csgraph import shortest_path

    d = shortest_path(sub.csr, method="D", directed=False, unweighted=True)
    finite = np.where(np.isinf(d), -1, d)
    ecc = finite.max(axis=1)
    connected = not np.isinf(d).any()
    if connected:
        return int(ecc.min()), int(ecc.max()), True
    # per-component radius, then the maximum over components
    labels = np.full(sub.n, -1)
    comp = 0
    for v in range(sub.n):
        if labels[v] < 0:
            labels[~np.isinf(d[v])] = comp
            comp += 1
    rad = max(int(ecc[labels == c].min()) for c in range(comp))
    return rad, int(ecc.max()), False


def center_info(g: Graph, dist: np.ndarray | None = None) -> CenterInfo:
    if dist is None:
        dist = distance_matrix(g)
    ecc = dist.max(axis=1)
    rad, diam = int(ecc.min()), int(ecc.max())
    center = [int(v) for v in np.flatnonzero(ecc == rad)]
    diam_c = int(dist[np.ix_(center, center)].max())
    sub, _ = g.induced(center)
    rad_c, diam_c_induced, connected = _radius_and_diameter(sub)
    levels = [[int(v) for v in np.flatnonzero(ecc <= rad + k)] for k in range(diam - rad + 1)]
    return CenterInfo(
        center=center,
        diam_of_center=diam_c,
        diam_of_center_induced=diam_c_induced,
        rad_of_center=rad_c,
        center_connected=connected,
        level_sets=levels,
        eps_flag=int(diam >= 2 * rad - 1),
    )


def central_of_center(g: Graph, dist: np.ndarray | None = None) -> list[int]:
    """C(C(G)): central vertices of the subgraph induced by the center."""
    if dist is None:
        dist = distance_matrix(g)
    ecc = dist.max(axis=1)
    center = [int(v) for v in np.flatnonzero(ecc == ecc.min())]
    sub, keep = g.induced(center)
    from scipy.sparse.csgraph import shortest_path

    d = shortest_path(sub.csr, method="D", directed=False, unweighted=True)
    sub_ecc = d.max(axis=1)
    return [keep[i] for i in np.flatnonzero(sub_ecc == sub_ecc.min())]


def furthest_set(g: Graph, v: int, dist: np.ndarray | None = None) -> FurthestSet:
    row = np.asarray(dist[v] if dist is not None else bfs_dist(g, v))
    e = row.max()
    return FurthestSet(v, [int(u) for u in np.flatnonzero(row == e)])


def locality(g: Graph, v: int, dist: np.ndarray | None = None) -> Locality:
    """Distance from ``v`` to the nearest vertex of strictly smaller eccentricity.

    Central vertices have no such vertex; they report ``Locality(0, True)``.
    """
    if dist is None:
        dist = distance_matrix(g)
    ecc = dist.max(axis=1)
    smaller = ecc < ecc[v]
    if not smaller.any():
        return Locality(0, True)
    return Locality(int(dist[v][smaller].min()), False)


def distance_to_set(dist: np.ndarray, v: int, members: list[int]) -> int:
    return int(dist[v, members].min())
