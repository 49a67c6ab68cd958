from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from alphametric import classify
from alphametric.generators import (
    SplitMix64,
    GenSpec,
    complete,
    cycle,
    gen_alpha1_blocks,
    gen_chordal,
    gen_distance_hereditary,
    gen_named,
    gen_ptolemaic,
    generate,
    grid,
    path,
)


def test_splitmix_reference_outputs():
    assert SplitMix64(0).next() == 0xE220A8397B1DCDAF
    rng = SplitMix64(1234567)
    assert [rng.next() for _ in range(3)] == [6457827717110365317, 3203168211198807973, 9817491932198370423]


def test_below_stays_in_range():
    rng = SplitMix64(9)
    assert {rng.below(3) for _ in range(200)} == {0, 1, 2}
    with pytest.raises(ValueError):
        rng.below(0)


def test_chordal_small_cases():
    assert gen_chordal(1, 0).graph.n == 1
    for seed in range(20):
        g = gen_chordal(3, seed, 2).graph
        assert g.m in (2, 3)


def _is_perfect_elimination(g, order):
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [u for u in g.adj[v] if pos[u] > pos[v]]
        if any(b not in g.adj_sets[a] for i, a in enumerate(later) for b in later[i + 1 :]):
            return False
    return True


@given(st.integers(1, 80), st.integers(0, 2**64 - 1), st.integers(1, 5))
def test_chordal_order_is_perfect_elimination(n, seed, k):
    made = gen_chordal(n, seed, k)
    assert _is_perfect_elimination(made.graph, made.elimination_order)


def test_distance_hereditary_extremes():
    g = gen_distance_hereditary(12, 4, (1, 0, 0)).graph
    assert g.m == g.n - 1
    assert gen_distance_hereditary(7, 4, (0, 1, 0)).graph == complete(7)
    with pytest.raises(ValueError):
        gen_distance_hereditary(5, 0, (0, 0, 0))


def test_ptolemaic_examples():
    g = gen_ptolemaic(5, 2, pendant_weight=1, twin_weight=0).graph
    assert g.m == 4 and classify.alpha_index(g) == 0
    assert gen_ptolemaic(6, 2, pendant_weight=0, twin_weight=1).graph == complete(6)


def test_named_graphs():
    assert gen_named("c5") == cycle(5)
    assert gen_named("p5") == path(5)
    with pytest.raises(KeyError):
        gen_named("petersen")


@given(st.sampled_from(["chordal", "distance_hereditary", "ptolemaic", "gnp_connected", "alpha1_blocks"]),
       st.integers(1, 40), st.integers(0, 2**64 - 1))
def test_same_spec_same_edges(cls, n, seed):
    spec = GenSpec(cls, n, seed)
    assert generate(spec).graph.to_text() == generate(spec).graph.to_text()


def test_block_graphs_stay_alpha1():
    for seed in range(15):
        g = gen_alpha1_blocks(40, seed, flips=8).graph
        assert g.n == 40 and classify.alpha_index(g) <= 1


def test_generate_fixed_classes():
    assert generate(GenSpec("cycle", 6)).graph == cycle(6)
    assert generate(GenSpec("grid", 6, params={"rows": 2, "cols": 3})).graph == grid(2, 3)
    assert generate(GenSpec("pattern", 9, params={"name": "w6pp"})).graph.n == 9
    with pytest.raises(KeyError):
        generate(GenSpec("hypercube", 8))
