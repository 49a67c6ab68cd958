from __future__ import annotations

import pytest
from hypothesis import given

import brute
from alphametric.gates import (
    NotACliqueError,
    compute_d2_gates,
    compute_gates,
    edge_has_triangle_with_earlier,
    verify_gate,
)
from alphametric.generators import complete, cycle, gen_named, path
from alphametric.graph import bfs_dist
from conftest import chordal_graphs, reference


def test_five_cycle_edge_has_no_gate_for_far_vertex():
    g = cycle(5)
    gates = compute_gates(g, [0, 1])
    assert gates.dist[3] == 2
    assert not verify_gate(g, gates, 3, bfs_dist(g, 3))
    # no neighbour of 3 is adjacent to both 0 and 1
    assert not any({0, 1} <= g.adj_sets[u] for u in g.adj[3])


def test_path_gates_lie_on_the_unique_path():
    g = path(5)
    gates = compute_gates(g, [0])
    for v in range(2, 5):
        assert gates.candidate[v] == 1
        assert verify_gate(g, gates, v, bfs_dist(g, v))


def test_d2_gate_of_five_cycle():
    m = compute_d2_gates(cycle(5), [0, 1])
    assert m.gate[3] == 3 and m.independent_set(3) == (2, 4) and m.p_value[3] == 2


def test_d2_gate_base_case():
    m = compute_d2_gates(cycle(5), [0, 1])
    for v in (2, 4):
        assert m.gate[v] == v and m.independent_set(v) == (v,)


def test_d2_gates_need_a_clique():
    with pytest.raises(NotACliqueError):
        compute_d2_gates(path(3), [0, 2])


def test_triangle_flags():
    assert edge_has_triangle_with_earlier(complete(3), [0, 1, 2]) == [False, True, True]
    assert edge_has_triangle_with_earlier(cycle(5), [1, 4]) == [False, False]
    # diamond: neighbours of 1 are 0, 2, 3 and the chords 0-2, 2-3 close triangles
    diamond = gen_named("diamond")
    assert edge_has_triangle_with_earlier(diamond, [0, 2, 3]) == [False, True, True]


@given(chordal_graphs())
def test_chordal_gates_to_closed_neighbourhoods_verify(g):
    for x in range(min(g.n, 5)):
        targets = [x, *g.adj[x]]
        gates = compute_gates(g, targets)
        assert all(verify_gate(g, gates, v, bfs_dist(g, v)) for v in range(g.n))


@given(chordal_graphs())
def test_chordal_d2_gates_keep_projection(g):
    _, D = reference(g)
    for K in g.edges()[:3]:
        m = compute_d2_gates(g, K)
        for v in range(g.n):
            if m.dist[v] >= 2:
                proj = {a for a in K if D[v][a] == m.dist[v]}
                star = m.gate[v]
                assert {a for a in K if D[star][a] == m.dist[star]} == proj
                assert D[v][star] == m.dist[v] - m.dist[star]
