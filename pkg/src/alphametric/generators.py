"""Seeded graph generators for the classes the bounds are stated over.

Randomness comes from SplitMix64 so a (class, n, seed, params) spec yields the
same edge list in any language that implements the same few lines.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any, Callable

from .graph import Graph

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15

NAMED = ("c4", "c5", "c6", "p5", "k4", "diamond", "w6pp")


class SplitMix64:
    """Steele, Lea and Flood's SplitMix64 with its published mixing constants."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    @staticmethod
    def mix(z: int) -> int:
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def next(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return self.mix(self.state)

    def below(self, k: int) -> int:
        """Uniform integer in [0, k) by rejection, so no modulo bias."""
        if k <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - (1 << 64) % k
        while True:
            r = self.next()
            if r < limit:
                return r % k

    def random(self) -> float:
        return (self.next() >> 11) * 2.0**-53

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

    def split(self, index: int) -> "SplitMix64":
        """Independent child stream for operation ``index``."""
        return SplitMix64(self.mix((self.state ^ self.mix(index * GOLDEN_GAMMA + 1)) & MASK64))


@dataclass(frozen=True)
class GenSpec:
    cls: str
    n: int
    seed: int = 0
    params: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"class": self.cls, "n": self.n, "seed": self.seed, "params": dict(sorted(self.params.items()))}


@dataclass(frozen=True)
class Generated:
    graph: Graph
    spec: GenSpec
    elimination_order: list[int] | None = None

    def sidecar(self) -> dict:
        data = {"spec": self.spec.to_json(), "n": self.graph.n, "m": self.graph.m}
        if self.elimination_order is not None:
            data["elimination_order"] = self.elimination_order
        return data


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"vertex count must be at least 1, got {n}")


def gen_chordal(n: int, seed: int, max_attach: int = 3) -> Generated:
    """Grow a chordal graph by adding simplicial vertices.

    Each new vertex attaches to a clique of random size inside the closed
    neighbourhood of a random earlier vertex.  Reversing the insertion order
    gives a perfect elimination ordering.
    """
    _check_n(n)
    if max_attach < 1:
        raise ValueError("max_attach must be at least 1")
    rng = SplitMix64(seed)
    nbrs: list[set[int]] = [set()]
    edges = []
    for v in range(1, n):
        r = rng.below(v)
        size = 1 + rng.below(max_attach)
        pool = sorted(nbrs[r])
        rng.shuffle(pool)
        clique = [r]
        for c in pool:
            if len(clique) >= size:
                break
            if all(c in nbrs[k] for k in clique):
                clique.append(c)
        nbrs.append(set(clique))
        for c in clique:
            nbrs[c].add(v)
            edges.append((c, v))
    spec = GenSpec("chordal", n, seed, {"max_attach": max_attach})
    return Generated(Graph.from_edges(n, edges), spec, list(range(n - 1, -1, -1)))


def gen_distance_hereditary(n: int, seed: int, op_mix: tuple[int, int, int] = (1, 1, 1)) -> Generated:
    """Grow from one vertex by pendant, true-twin and false-twin extensions.

    ``op_mix`` holds integer weights for the three operations in that order.
    A false twin of the lone starting vertex would be isolated, so it becomes
    a pendant instead.
    """
    _check_n(n)
    weights = tuple(int(w) for w in op_mix)
    if len(weights) != 3 or any(w < 0 for w in weights) or sum(weights) == 0:
        raise ValueError(f"op_mix needs three non-negative weights with a positive sum, got {op_mix}")
    rng = SplitMix64(seed)
    total = sum(weights)
    nbrs: list[set[int]] = [set()]
    for v in range(1, n):
        t = rng.below(v)
        pick = rng.below(total)
        op = 0 if pick < weights[0] else 1 if pick < weights[0] + weights[1] else 2
        if op == 0 or (op == 2 and not nbrs[t]):
            new = {t}
        elif op == 1:
            new = nbrs[t] | {t}
        else:
            new = set(nbrs[t])
        nbrs.append(new)
        for u in new:
            nbrs[u].add(v)
    edges = [(u, v) for v in range(n) for u in nbrs[v] if u < v]
    spec = GenSpec("distance_hereditary", n, seed, {"op_mix": list(weights)})
    return Generated(Graph.from_edges(n, edges), spec)


def gen_ptolemaic(n: int, seed: int, pendant_weight: int = 1, twin_weight: int = 1, max_attempts: int = 16) -> Generated:
    """Pendant and true-twin growth, re-checked with the classifier.

    A sample that fails the alpha_index == 0 check is replaced by one drawn
    from the next sub-seed.
    """
    from .classify import CLASSIFIER_LIMIT, alpha_index

    _check_n(n)
    rng = SplitMix64(seed)
    for attempt in range(max_attempts):
        sub = seed if attempt == 0 else rng.split(attempt).next()
        g = gen_distance_hereditary(n, sub, (pendant_weight, twin_weight, 0)).graph
        if n > CLASSIFIER_LIMIT or alpha_index(g) == 0:
            params = {"pendant_weight": pendant_weight, "twin_weight": twin_weight, "attempt": attempt}
            return Generated(g, GenSpec("ptolemaic", n, seed, params))
    raise RuntimeError(f"no ptolemaic sample after {max_attempts} attempts (n={n}, seed={seed})")


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    _check_n(n)
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    _check_n(n)
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def grid(rows: int, cols: int) -> Graph:
    if rows < 1 or cols < 1:
        raise ValueError("grid sides must be positive")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph.from_edges(rows * cols, edges)


def gen_gnp_connected(n: int, seed: int, p: float = 0.1) -> Generated:
    """Random recursive tree plus every other pair independently with probability p."""
    _check_n(n)
    rng = SplitMix64(seed)
    tree = {(rng.below(v), v) for v in range(1, n)}
    edges = list(tree)
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in tree and rng.random() < p:
                edges.append((u, v))
    return Generated(Graph.from_edges(n, edges), GenSpec("gnp_connected", n, seed, {"p": p}))


FIVE_CYCLE = [(i, (i + 1) % 5) for i in range(5)]
FIVE_WHEEL = FIVE_CYCLE + [(5, i) for i in range(5)]


def gen_alpha1_blocks(n: int, seed: int, flips: int = 0, max_block: int = 10) -> Generated:
    """Glue 5-cycles, 5-wheels and small chordal graphs together at single vertices.

    Gluing at a cut vertex keeps the alpha_1 property, and the 5-cycle blocks
    make most samples non-chordal.  ``flips`` random edge toggles follow; a
    toggle is kept only if the graph stays connected with alpha_index <= 1.
    """
    from .classify import alpha_index

    _check_n(n)
    rng = SplitMix64(seed)
    edges: list[tuple[int, int]] = []
    count = 1
    while count < n:
        kind = rng.below(3)
        if kind == 0:
            size, block = 5, FIVE_CYCLE
        elif kind == 1:
            size, block = 6, FIVE_WHEEL
        else:
            size = 2 + rng.below(max_block - 1)
            block = gen_chordal(size, rng.next(), 3).graph.edges()
        if size - 1 > n - count:
            size = n - count + 1
            block = gen_chordal(size, rng.next(), 3).graph.edges()
        anchor, root = rng.below(count), rng.below(size)
        ids = {}
        for i in range(size):
            if i == root:
                ids[i] = anchor
            else:
                ids[i] = count
                count += 1
        edges.extend((ids[a], ids[b]) for a, b in block)
    current = {(min(a, b), max(a, b)) for a, b in edges}
    if n >= 3:
        flip_rng = rng.split(1)
        for _ in range(flips):
            u, v = flip_rng.below(n), flip_rng.below(n - 1)
            v += v >= u
            trial = current ^ {(min(u, v), max(u, v))}
            g = Graph.from_edges(n, sorted(trial), check_connected=False)
            if g.is_connected() and alpha_index(g) <= 1:
                current = trial
    spec = GenSpec("alpha1_blocks", n, seed, {"flips": flips, "max_block": max_block})
    return Generated(Graph.from_edges(n, sorted(current)), spec)


def gen_named(name: str) -> Graph:
    """Fixed small graphs used in examples and tests."""
    if name == "c4":
        return cycle(4)
    if name == "c5":
        return cycle(5)
    if name == "c6":
        return cycle(6)
    if name == "p5":
        return path(5)
    if name == "k4":
        return complete(4)
    if name == "diamond":
        return Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    if name == "w6pp":
        from .classify import forbidden_pattern

        return forbidden_pattern()
    raise KeyError(f"unknown named graph {name!r}; choose from {', '.join(NAMED)}")


GENERATORS: dict[str, Callable[..., Generated]] = {
    "chordal": gen_chordal,
    "distance_hereditary": gen_distance_hereditary,
    "ptolemaic": gen_ptolemaic,
    "gnp_connected": gen_gnp_connected,
    "alpha1_blocks": gen_alpha1_blocks,
}


def generate(spec: GenSpec) -> Generated:
    """Build the graph a spec describes; deterministic classes ignore the seed."""
    if spec.cls in GENERATORS:
        return GENERATORS[spec.cls](spec.n, spec.seed, **spec.params)
    if spec.cls == "cycle":
        g = cycle(spec.n)
    elif spec.cls == "path":
        g = path(spec.n)
    elif spec.cls == "grid":
        g = grid(spec.params.get("rows", 1), spec.params.get("cols", spec.n))
    elif spec.cls == "pattern":
        g = gen_named(spec.params["name"])
    else:
        raise KeyError(f"unknown graph class {spec.cls!r}")
    return Generated(g, spec)

