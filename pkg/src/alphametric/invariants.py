"""Seeded corpora and oracle-backed invariant checks.

Each ``check_*`` function compares algorithm output against the all-pairs
distance matrix of one sample and records every inequality it tests in a
``Checker``.  Bounds with a half-integer term are compared after doubling
both sides, so everything stays in integers.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterator

import numpy as np

from . import approx, center, classify, gates, oracle
from .generators import (
    SplitMix64,
    cycle,
    gen_alpha1_blocks,
    gen_chordal,
    gen_distance_hereditary,
    gen_gnp_connected,
    gen_ptolemaic,
    path,
)
from .graph import BfsCache, Graph, distance_matrix

CLASS_ALPHA = {"chordal": 1, "distance_hereditary": 2, "ptolemaic": 0}
DELTA_BFS_LIMIT = 60


@dataclass
class Sample:
    label: str
    graph: Graph
    alpha: int
    alpha_source: str
    dist: np.ndarray = field(repr=False)

    @classmethod
    def build(cls, label: str, g: Graph, alpha: int | None = None) -> "Sample":
        D = distance_matrix(g)
        if alpha is None:
            return cls(label, g, classify.alpha_index(g, D), "measured", D)
        return cls(label, g, alpha, "class", D)

    @cached_property
    def ecc(self) -> np.ndarray:
        return self.dist.max(axis=1)

    @property
    def rad(self) -> int:
        return int(self.ecc.min())

    @property
    def diam(self) -> int:
        return int(self.ecc.max())

    @cached_property
    def center(self) -> list[int]:
        return [int(v) for v in np.flatnonzero(self.ecc == self.ecc.min())]

    @cached_property
    def dist_to_center(self) -> np.ndarray:
        return self.dist[:, self.center].min(axis=1)

    @cached_property
    def triangle_condition(self) -> bool:
        return classify.triangle_condition(self.graph, self.dist)


@dataclass
class Checker:
    counts: Counter = field(default_factory=Counter)
    violations: list[dict] = field(default_factory=list)

    def check(self, name: str, ok: bool, sample: Sample, detail: str = "") -> bool:
        self.counts[name] += 1
        if not ok:
            self.violations.append({"check": name, "sample": sample.label, "detail": detail})
        return bool(ok)

    def failures(self, prefix: str = "") -> list[dict]:
        return [v for v in self.violations if v["check"].startswith(prefix)]

    def to_json(self) -> dict:
        return {
            "checks": dict(sorted(self.counts.items())),
            "violation_count": len(self.violations),
            "violations": self.violations[:50],
        }


# corpora -----------------------------------------------------------------


def _sizes(seed: int, count: int, n_min: int, n_max: int) -> Iterator[tuple[int, int, int]]:
    rng = SplitMix64(seed)
    for k in range(count):
        child = rng.split(k)
        yield k, n_min + child.below(n_max - n_min + 1), child.next()


def corpus(kind: str, seed: int, count: int, n_min: int = 10, n_max: int = 60, measure: bool = True) -> Iterator[Sample]:
    """Yield seeded samples of one graph class.

    ``measure=False`` takes the alpha index implied by the class instead of
    running the classifier, which is what large samples need.
    """
    for k, n, sub in _sizes(seed, count, n_min, n_max):
        label = f"{kind}#{k}(n={n},seed={sub})"
        if kind == "chordal":
            g = gen_chordal(n, sub, 1 + sub % 4).graph
        elif kind == "distance_hereditary":
            g = gen_distance_hereditary(n, sub, (1 + sub % 3, 1 + (sub >> 2) % 3, 1 + (sub >> 4) % 3)).graph
        elif kind == "ptolemaic":
            g = gen_ptolemaic(n, sub).graph
        elif kind == "alpha1":
            if k % 2 == 0:
                g = gen_chordal(n, sub, 1 + sub % 4).graph
            else:
                g = gen_alpha1_blocks(n, sub, flips=sub % 16).graph
        elif kind == "mixed":
            g = _mixed(k, n, sub)
        else:
            raise KeyError(f"unknown corpus kind {kind!r}")
        alpha = None if measure or kind not in CLASS_ALPHA else CLASS_ALPHA[kind]
        yield Sample.build(label, g, alpha)


def _mixed(k: int, n: int, sub: int) -> Graph:
    pick = k % 8
    if pick == 0:
        return gen_gnp_connected(n, sub, 0.05 + (sub % 5) * 0.05).graph
    if pick == 1:
        return gen_gnp_connected(n, sub, 0.3 + (sub % 5) * 0.1).graph
    if pick == 2:
        return gen_chordal(n, sub, 1 + sub % 4).graph
    if pick == 3:
        return gen_distance_hereditary(n, sub).graph
    if pick == 4:
        return gen_alpha1_blocks(n, sub).graph
    if pick == 5:
        return cycle(max(n, 3))
    if pick == 6:
        return path(n)
    return gen_gnp_connected(n, sub, 2.5 / max(n, 1)).graph


# checks ------------------------------------------------------------------


def _interval_mask(D: np.ndarray, x: int, y: int) -> np.ndarray:
    return D[x] + D[y] == D[x, y]


def _slice(D: np.ndarray, x: int, y: int, k: int) -> np.ndarray:
    return np.flatnonzero(_interval_mask(D, x, y) & (D[x] == k))


def _middles(D: np.ndarray, x: int, y: int) -> np.ndarray:
    d = int(D[x, y])
    return np.union1d(_slice(D, x, y, d // 2), _slice(D, x, y, (d + 1) // 2))


def check_oracle_bounds(s: Sample, chk: Checker) -> None:
    """Eccentricity, locality and distance-to-center bounds in terms of alpha."""
    i, rad, diam = s.alpha, s.rad, s.diam
    chk.check("oracle.diam-vs-rad", 2 * rad >= diam >= 2 * rad - i - 1, s, f"rad={rad} diam={diam} i={i}")
    dc = s.dist_to_center
    ok = bool(((dc + rad - i <= s.ecc) & (s.ecc <= dc + rad)).all())
    chk.check("oracle.ecc-vs-center-distance", ok, s)
    k = s.ecc - rad
    noncentral = k > 0
    chk.check("oracle.center-distance", bool((dc[noncentral] <= k[noncentral] + i).all()), s)
    for v in np.flatnonzero(noncentral):
        smaller = s.ecc < s.ecc[v]
        loc = int(s.dist[v, smaller].min())
        if not chk.check("oracle.locality", loc <= i + 1, s, f"v={v} loc={loc}"):
            break
    thin = classify.interval_thinness(s.graph, s.dist)
    chk.check("classifier.thinness", thin <= i + 1, s, f"thinness={thin} i={i}")


def check_center_structure(s: Sample, chk: Checker, disks: int = 200) -> None:
    i, D = s.alpha, s.dist
    g = s.graph
    info = oracle.center_info(g, D)
    chk.check("center.diameter", info.diam_of_center <= 3 * i + 2, s, f"diam(C)={info.diam_of_center} i={i}")
    k = max(2 * i - 1, 0)
    chk.check("center.dk-convex", classify.dk_convex(g, s.center, k, D), s, f"k={k}")
    rng = SplitMix64(g.n * 1_000_003 + g.m)
    for _ in range(disks):
        v = rng.below(g.n)
        r = rng.below(int(s.ecc[v]) + 1)
        members = np.flatnonzero(D[v] <= r)
        if not chk.check("center.disk-dk-convex", classify.dk_convex(g, members, k, D), s, f"v={v} r={r} k={k}"):
            break
    if i <= 1:
        chk.check("center.alpha1-diameter", info.diam_of_center <= 3, s, f"diam(C)={info.diam_of_center}")
        chk.check("center.alpha1-radius", info.rad_of_center <= 2, s, f"rad(C)={info.rad_of_center}")
        chk.check(
            "center.induced-matches-host",
            info.center_connected and info.diam_of_center == info.diam_of_center_induced,
            s,
            f"host={info.diam_of_center} induced={info.diam_of_center_induced}",
        )


def check_unimodality(s: Sample, chk: Checker, smaller_ecc: bool = True) -> None:
    """Near-unimodality of the eccentricity function on alpha_1 samples."""
    if s.alpha > 1:
        return
    g, D, ecc, rad, diam = s.graph, s.dist, s.ecc, s.rad, s.diam
    for v in range(g.n):
        e = int(ecc[v])
        has_better = any(ecc[w] < e for w in g.adj[v])
        if e > rad + 1:
            chk.check("unimodal.far-vertex-descends", has_better, s, f"v={v} e={e} rad={rad}")
        if diam < 2 * rad - 1 and e > rad:
            chk.check("unimodal.tight-diameter-descends", has_better, s, f"v={v}")
        if e > rad:
            chk.check("unimodal.center-distance", s.dist_to_center[v] <= e - rad + 1, s, f"v={v}")
            loc = int(D[v, ecc < e].min())
            chk.check("unimodal.locality", loc <= 2, s, f"v={v} loc={loc}")
    if not smaller_ecc:
        return
    for a in range(g.n):
        far = np.flatnonzero(D[a] >= 4)
        if far.size == 0:
            continue
        on = (D[a][:, None] + D[:, far]) == D[a, far][None, :]
        on[a, :] = False
        on[far, np.arange(far.size)] = False
        best = np.where(on, ecc[:, None], np.iinfo(np.int32).max).min(axis=0)
        ok = bool((best < np.maximum(ecc[a], ecc[far])).all())
        if not chk.check("unimodal.interior-smaller", ok, s, f"s={a}"):
            break


def _seeds(n: int) -> list[int]:
    return sorted({0, n // 2, n - 1})


def check_radius_diameter(s: Sample, chk: Checker) -> None:
    i, D, ecc, rad, diam = s.alpha, s.dist, s.ecc, s.rad, s.diam
    g = s.graph
    center = np.asarray(s.center)
    for z in _seeds(g.n):
        cache = BfsCache(g)
        trace = approx.mutually_distant_pair(g, z, cache)
        x, y = trace.final_pair
        d = int(D[x, y])
        chk.check("mdp.mutually-distant", ecc[x] == ecc[y] == d, s, f"pair={x},{y}")
        chk.check("mdp.iterations", len(trace.sequence) <= 3 * i + 4, s, f"len={len(trace.sequence)} i={i}")
        chk.check("mdp.pair-length", d >= max(2 * rad - 4 * i - 3, diam - 3 * i - 2), s, f"d={d}")
        mids = _middles(D, x, y)
        worst = int(ecc[mids].max())
        chk.check("mdp.middle-radius", worst <= rad + 2 * i + 1, s, f"z={z} e={worst} rad={rad} i={i}")
        chk.check("mdp.middle-vs-pair", worst <= (d + 1) // 2 + 2 * i + 1, s, f"z={z}")
        low = int(ecc[_slice(D, x, y, d // 2)].min())
        chk.check("mdp.slice-has-near-central", low <= rad + i, s, f"z={z} min e={low}")
        reach = int(D[np.ix_(mids, center)].max())
        chk.check("mdp.center-in-disk", reach <= 4 * i + 3, s, f"z={z} reach={reach}")
        c = approx.middle_vertex(g, x, y, cache)
        chk.check("mdp.algorithm-middle", int(ecc[c]) <= rad + 2 * i + 1, s, f"c={c}")

        sx, sy = approx.double_sweep(g, z, cache)
        furthest = np.flatnonzero(D[z] == ecc[z])
        lowest = int(ecc[furthest].min())
        chk.check("sweep.furthest-ecc", lowest >= diam - 3 * i - 2, s, f"z={z} e={lowest}")
        chk.check("sweep.furthest-ecc-via-center", lowest >= 2 * rad - 2 * i - _diam_center(s), s, f"z={z}")
        ds = int(D[sx, sy])
        sweep_mid = _slice(D, sx, sy, ds // 2)
        worst = int(ecc[sweep_mid].max())
        # e <= rad + 4i + (i+1)/2 + 2, doubled
        chk.check("sweep.middle-radius", 2 * worst <= 2 * rad + 8 * i + i + 1 + 4, s, f"z={z} e={worst}")
        chk.check("sweep.middle-vs-pair", worst <= (ds + 1) // 2 + 5 * i + 3, s, f"z={z}")
        reach = int(D[np.ix_(_middles(D, sx, sy), center)].max())
        chk.check("sweep.center-in-disk", 2 * reach <= 8 * i + i + 1 + 4, s, f"z={z} reach={reach}")

    lin = approx.approx_radius(g, "linear")
    chk.check("approx.linear-radius", 2 * lin.ecc <= 2 * rad + 8 * i + i + 1 + 4, s, f"e={lin.ecc}")
    mdp = approx.approx_radius(g, "mdp")
    chk.check("approx.mdp-radius", mdp.ecc <= rad + 2 * i + 1, s, f"e={mdp.ecc}")
    for mode in ("linear", "mdp"):
        est = approx.approx_diameter(g, mode)
        chk.check(f"approx.{mode}-diameter", diam - 3 * i - 2 <= est.d_lower <= diam, s, f"d={est.d_lower}")


def _diam_center(s: Sample) -> int:
    return int(s.dist[np.ix_(s.center, s.center)].max())


def check_all_ecc(s: Sample, chk: Checker) -> None:
    i, D, ecc = s.alpha, s.dist, s.ecc
    g = s.graph
    x, y = approx.mutually_distant_pair(g, 0).final_pair
    rep = approx.ecc_lower_bounds(g, x, y)
    lower = np.asarray(rep.lower)
    chk.check("lower.below-ecc", bool((lower <= ecc).all()), s)
    worst = int((ecc - lower).max())
    chk.check("lower.deficit", worst <= 3 * i + 2, s, f"deficit={worst} i={i}")
    for strategy, bound in (("mdp_middle", 4 * i + 3), ("sweep_middle", 7 * i + 5)):
        tree = approx.build_ecc_tree(g, strategy)
        check_tree(s, chk, tree, bound, f"tree.{strategy}")


def check_tree(s: Sample, chk: Checker, tree: approx.SpanningTree, bound: int, name: str) -> None:
    t = tree.to_graph()
    brute = distance_matrix(t).max(axis=1)
    te = np.asarray(tree.tree_ecc)
    chk.check(f"{name}.formula", bool((brute == te).all()), s)
    root_row = s.dist[tree.root]
    depth = distance_matrix(t)[tree.root]
    chk.check(f"{name}.bfs-tree", bool((depth == root_row).all()), s)
    chk.check(f"{name}.dominates", bool((te >= s.ecc).all()), s)
    worst = int((te - s.ecc).max())
    chk.check(f"{name}.deficit", worst <= bound, s, f"deficit={worst} bound={bound}")


def check_central_algorithms(s: Sample, chk: Checker, trees: bool = True) -> None:
    """Local-search center finders against the oracle radius (alpha_1 samples only)."""
    if s.alpha > 1:
        return
    g, rad = s.graph, s.rad
    r1 = center.find_rad_plus_1(g)
    chk.check("search.rad-plus-1", r1.ecc <= rad + 1, s, f"e={r1.ecc} rad={rad}")
    c1 = center.find_central_alpha1(g)
    chk.check("search.alpha1-exact", c1.ecc == rad, s, f"e={c1.ecc} rad={rad}")
    xs = [st.candidate_count for st in c1.trace]
    chk.check("search.alpha1-progress", all(a > b for a, b in zip(xs, xs[1:])), s, f"sizes={xs}")
    chk.check("search.alpha1-distinct", len({st.x for st in c1.trace}) == len(c1.trace), s)
    if trees:
        check_tree(s, chk, center.ecc_tree_alpha1(g, root=c1.vertex), 4, "tree.alpha1-center")
        cc = oracle.central_of_center(g, s.dist)[0]
        check_tree(s, chk, center.ecc_tree_alpha1(g, root=cc), 3, "tree.alpha1-center-of-center")
    if s.triangle_condition:
        c2 = center.find_central_alpha1_delta(g)
        chk.check("search.delta-exact", c2.ecc == rad, s, f"e={c2.ecc} rad={rad}")
        chk.check("search.delta-bfs", c2.bfs_count <= DELTA_BFS_LIMIT, s, f"bfs={c2.bfs_count}")
        if trees:
            check_tree(s, chk, center.ecc_tree_alpha1(g, root=c2.vertex), 3, "tree.delta-center")
            cc = oracle.central_of_center(g, s.dist)[0]
            check_tree(s, chk, center.ecc_tree_alpha1(g, root=cc), 2, "tree.delta-center-of-center")


def check_local_search(s: Sample, chk: Checker) -> None:
    """Per-vertex local steps agree with a brute-force scan of the neighbourhood."""
    if s.alpha > 1:
        return
    g, ecc = s.graph, s.ecc
    cache = BfsCache(g)
    for x in range(g.n):
        better = any(ecc[w] < ecc[x] for w in g.adj[x])
        out = center.local_min_step(g, x, cache=cache)
        ok = out.improved == better and (not out.improved or ecc[out.vertex] < ecc[x])
        chk.check("search.local-step", ok, s, f"x={x} outcome={out.kind}")
        if s.triangle_condition:
            out = center.local_min_step(g, x, delta=True, cache=cache)
            ok = out.improved == better and (not out.improved or ecc[out.vertex] < ecc[x])
            chk.check("search.local-step-delta", ok, s, f"x={x}")
        out = center.descend_rad2(g, x, cache)
        if out.improved:
            chk.check("search.descend-improves", ecc[out.vertex] < ecc[x], s, f"x={x}")
        else:
            chk.check("search.descend-near-center", ecc[x] <= s.rad + 1, s, f"x={x}")


def check_gates(s: Sample, chk: Checker, probes: int = 5) -> None:
    """Gates w.r.t. closed neighbourhoods and distance-two gates w.r.t. cliques."""
    g, D = s.graph, s.dist
    rng = SplitMix64(g.n * 7919 + g.m)
    for _ in range(probes):
        x = rng.below(g.n)
        ball = [x, *g.adj[x]]
        gm = gates.compute_gates(g, ball)
        for v in range(g.n):
            exists = _gate_exists(g, D, ball, v)
            got = gates.verify_gate(g, gm, v, D[v])
            if s.alpha <= 1:
                chk.check("gates.ball-verified", got, s, f"x={x} v={v}")
            if exists:
                chk.check("gates.found-when-exists", got, s, f"x={x} v={v}")
    if s.alpha > 1:
        return
    for _ in range(probes):
        a, size = rng.below(g.n), 1 + rng.below(4)
        clique = [a]
        for b in g.adj[a]:
            if len(clique) >= size:
                break
            if all(g.has_edge(b, c) for c in clique):
                clique.append(b)
        d2 = gates.compute_d2_gates(g, clique)
        cols = np.asarray(sorted(clique))
        for v in range(g.n):
            dv = d2.dist[v]
            gv = d2.gate[v]
            proj_v = set(cols[D[v, cols] == dv].tolist())
            proj_g = set(cols[D[gv, cols] == d2.dist[gv]].tolist())
            ok = proj_v == proj_g and D[v, gv] == dv - d2.dist[gv] and d2.dist[gv] <= 2
            if dv >= 2:
                tiles = [set(cols[D[w, cols] == 1].tolist()) for w in d2.independent_set(v)]
                union = set().union(*tiles)
                ok = ok and union == proj_g and sum(map(len, tiles)) == len(union) == d2.p_value[v]
            chk.check("gates.d2-projection", ok, s, f"K={sorted(clique)} v={v}")


def _gate_exists(g: Graph, D: np.ndarray, targets: list[int], v: int) -> bool:
    cols = np.asarray(targets)
    dv = int(D[v, cols].min())
    if dv <= 1:
        return True
    proj = cols[D[v, cols] == dv]
    layer = np.flatnonzero(D[v] == dv - 1)
    ok = (D[np.ix_(layer, proj)] == 1).all(axis=1)
    return bool(ok.any())


def check_characterization(s: Sample, chk: Checker) -> bool:
    verdict = classify.alpha1_by_characterization(s.graph, s.dist)
    if verdict is None:
        return False
    chk.check("classifier.characterization", verdict == (s.alpha <= 1), s, f"alpha={s.alpha} char={verdict}")
    return True


# suites ------------------------------------------------------------------


@dataclass
class SuiteSpec:
    description: str
    run: Callable[[int, int, Checker], int]


def _suite_alpha1(seed: int, count: int, chk: Checker) -> int:
    k = 0
    for s in corpus("alpha1", seed, count, 10, 80):
        check_oracle_bounds(s, chk)
        check_center_structure(s, chk, disks=50)
        check_unimodality(s, chk)
        check_central_algorithms(s, chk)
        check_local_search(s, chk)
        check_gates(s, chk, probes=2)
        k += 1
    return k


def _suite_classifier(seed: int, count: int, chk: Checker) -> int:
    k = 0
    for kind, bound in (("chordal", 1), ("distance_hereditary", 2), ("ptolemaic", 0)):
        for s in corpus(kind, seed, count, 5, 60):
            ok = s.alpha == 0 if kind == "ptolemaic" else s.alpha <= bound
            chk.check(f"classifier.{kind}", ok, s, f"alpha={s.alpha}")
            k += 1
    for s in corpus("mixed", seed, count, 5, 40):
        check_oracle_bounds(s, chk)
        check_characterization(s, chk)
        k += 1
    return k


def _suite_approx(seed: int, count: int, chk: Checker) -> int:
    k = 0
    for kind in ("chordal", "distance_hereditary", "ptolemaic", "mixed"):
        for s in corpus(kind, seed, count, 10, 120):
            check_radius_diameter(s, chk)
            check_all_ecc(s, chk)
            check_center_structure(s, chk, disks=20)
            k += 1
    return k


SUITES: dict[str, SuiteSpec] = {
    "alpha1-suite": SuiteSpec("center search, gates and unimodality on alpha_1 samples", _suite_alpha1),
    "classifier-suite": SuiteSpec("class containments, thinness and characterization", _suite_classifier),
    "approx-suite": SuiteSpec("sweep, pair, lower-bound and tree guarantees", _suite_approx),
}


def run_suite(name: str, seed: int, count: int) -> tuple[int, Checker]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    chk = Checker()
    samples = SUITES[name].run(seed, count, chk)
    return samples, chk
