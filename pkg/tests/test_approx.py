from __future__ import annotations

import pytest
from hypothesis import given

import brute
from alphametric import approx
from alphametric.generators import complete, cycle, gen_chordal, path, star
from alphametric.graph import BfsCache, Graph
from conftest import chordal_graphs, connected_graphs, reference


def test_double_sweep_examples():
    assert approx.double_sweep(path(5), 2) == (0, 4)
    assert approx.double_sweep(cycle(6), 0) == (3, 0)


def test_mutually_distant_pair_on_path():
    trace = approx.mutually_distant_pair(path(5), 1)
    assert trace.final_pair == (0, 4)
    assert len(trace.sequence) == 2 and trace.pair_distance == 4


def test_any_five_cycle_pair_is_mutually_distant():
    for z in range(5):
        x, y = approx.mutually_distant_pair(cycle(5), z).final_pair
        assert approx.ecc_lower_bounds(cycle(5), x, y).pair == (x, y)


def test_middle_vertex_floor_convention():
    assert approx.middle_vertex(path(5), 0, 4) == 2
    assert approx.middle_vertex(complete(2), 0, 1) == 0
    # canonical path 0-1-2-3 has length 3, so index 1
    assert approx.middle_vertex(cycle(6), 0, 3) == 1


@pytest.mark.parametrize("mode", ["linear", "mdp"])
def test_radius_on_path(mode):
    est = approx.approx_radius(path(5), mode)
    assert est.center == 2 and est.ecc == 2


def test_radius_and_diameter_on_six_cycle():
    assert approx.approx_radius(cycle(6), "mdp").ecc == 3
    assert approx.approx_diameter(cycle(6)).d_lower == 3
    assert approx.approx_diameter(path(5)).d_lower == 4


def test_lower_bounds_examples():
    assert approx.ecc_lower_bounds(path(5), 0, 4).lower == [4, 3, 2, 3, 4]
    rep = approx.ecc_lower_bounds(cycle(5), 0, 2)
    assert rep.lower == [2, 1, 2, 2, 2]


def test_lower_bounds_reject_non_distant_pair():
    with pytest.raises(approx.NotMutuallyDistantError):
        approx.ecc_lower_bounds(path(5), 1, 4)


def test_tree_eccentricities_examples():
    t = approx.tree_eccentricities(star(3))
    assert t.ecc == [1, 2, 2, 2] and t.center == [0]
    t = approx.tree_eccentricities(path(5))
    assert t.ecc == [4, 3, 2, 3, 4] and t.center == [2]
    t = approx.tree_eccentricities(path(4))
    assert t.center == [1, 2] and t.radius == 2


def test_tree_eccentricities_rejects_cycles():
    with pytest.raises(approx.NotATreeError):
        approx.tree_eccentricities(cycle(4))


def test_six_cycle_bfs_tree():
    tree = approx.build_ecc_tree(cycle(6), "given_root", root=0)
    assert tree.edges() == [(0, 1), (0, 5), (1, 2), (2, 3), (4, 5)]
    assert tree.tree_ecc == brute.tree_eccentricities(6, tree.edges())


def test_tree_input_is_reproduced_exactly():
    g = gen_chordal(40, 3, max_attach=1).graph
    assert g.m == g.n - 1
    _, D = reference(g)
    for strategy in ("mdp_middle", "sweep_middle"):
        assert approx.build_ecc_tree(g, strategy).tree_ecc == brute.eccentricities(D)


def test_given_root_needs_a_root():
    with pytest.raises(ValueError):
        approx.build_ecc_tree(path(3), "given_root")


def test_linear_mode_uses_constant_bfs_count():
    for n in (50, 400, 1500):
        cache = BfsCache(gen_chordal(n, n).graph)
        approx.approx_radius(cache.g, "linear", cache)
        assert cache.count <= 4


@given(connected_graphs(min_n=2))
def test_sweep_trace_ends_mutually_distant(g):
    _, D = reference(g)
    ecc = brute.eccentricities(D)
    trace = approx.mutually_distant_pair(g, 0)
    x, y = trace.final_pair
    assert ecc[x] == ecc[y] == D[x][y]
    assert trace.distances == [ecc[v] for v in trace.sequence]


@given(connected_graphs(min_n=2))
def test_lower_bounds_never_exceed_eccentricity(g):
    _, D = reference(g)
    ecc = brute.eccentricities(D)
    x, y = approx.mutually_distant_pair(g, 0).final_pair
    lower = approx.ecc_lower_bounds(g, x, y).lower
    assert all(lo <= e for lo, e in zip(lower, ecc))


@given(connected_graphs())
def test_tree_formula_matches_naive(g):
    tree = approx.build_ecc_tree(g, "mdp_middle")
    assert tree.tree_ecc == brute.tree_eccentricities(g.n, tree.edges())
    _, D = reference(g)
    assert all(t >= e for t, e in zip(tree.tree_ecc, brute.eccentricities(D)))


@given(chordal_graphs())
def test_chordal_sweep_and_tree_bounds(g):
    _, D = reference(g)
    ecc = brute.eccentricities(D)
    rad, diam = min(ecc), max(ecc)
    x, _ = approx.double_sweep(g, 0)
    assert ecc[x] >= diam - 2
    assert approx.approx_radius(g, "mdp").ecc <= rad + 3
    tree = approx.build_ecc_tree(g, "mdp_middle")
    assert max(t - e for t, e in zip(tree.tree_ecc, ecc)) <= 7
    x, y = approx.mutually_distant_pair(g, 0).final_pair
    lower = approx.ecc_lower_bounds(g, x, y).lower
    assert max(e - lo for lo, e in zip(lower, ecc)) <= 5
